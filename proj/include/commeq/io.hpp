#pragma once

#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "commeq/errors.hpp"
#include "commeq/family.hpp"
#include "commeq/inverse.hpp"
#include "commeq/matrix.hpp"
#include "commeq/scalar.hpp"
#include "commeq/taylor.hpp"
#include "commeq/verify.hpp"

// JSON wire forms. Scalars travel as exact text ("3", "-5/7", or
// {"re": ..., "im": ...} when the imaginary part is nonzero) so files
// round-trip bit for bit. Multi-document files are line-delimited: one
// JSON object per line, blank lines skipped.

namespace commeq {

using json = nlohmann::json;

inline json scalar_to_json(const Scalar& s) {
    if (s.im().is_zero()) return json(s.re().str());
    return json{{"re", s.re().str()}, {"im", s.im().str()}};
}

inline Scalar scalar_from_json(const json& j) {
    if (j.is_number_integer()) return Scalar(Rational(static_cast<long>(j.get<long long>())));
    if (j.is_string()) {
        try {
            return Scalar::parse(j.get<std::string>());
        } catch (const Error& e) {
            throw ParseError(std::string("bad scalar \"") + j.get<std::string>() + "\": " + e.what());
        }
    }
    if (j.is_object()) {
        Rational re, im;
        if (j.contains("re")) re = scalar_from_json(j.at("re")).re();
        if (j.contains("im")) im = scalar_from_json(j.at("im")).re();
        return Scalar(re, im);
    }
    throw ParseError("scalar must be an integer, a string, or {\"re\", \"im\"}");
}

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"n", m.rows()}, {"rows", std::move(rows)}};
}

inline Matrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("rows"))
        throw ParseError("matrix must be {\"n\": size, \"rows\": [[...]]}");
    int n = j.at("n").get<int>();
    const json& rows = j.at("rows");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw ParseError("matrix rows count does not match n");
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        const json& row = rows.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw ParseError("matrix row " + std::to_string(i + 1) + " has wrong length");
        for (int k = 0; k < n; ++k)
            m.at(i, k) = scalar_from_json(row.at(static_cast<std::size_t>(k)));
    }
    return m;
}

inline json family_to_json(const SolutionFamily& fam) {
    json slots = json::array();
    for (const auto& s : fam.slots) {
        json entries = json::array();
        for (const auto& [r, c] : s.free_entries) entries.push_back(json::array({r, c}));
        slots.push_back(json{{"block", s.block},
                             {"free_entries", std::move(entries)},
                             {"constraints", s.constraints}});
    }
    json blocks = json::array();
    for (const auto& b : fam.assembly.blocks)
        blocks.push_back(json{{"eigenvalue", scalar_to_json(b.eigenvalue)}, {"size", b.size}});
    json assembly{{"blocks", std::move(blocks)}};
    if (!fam.assembly.identity_similarity)
        assembly["similarity"] = matrix_to_json(fam.assembly.p);
    return json{{"kind", family_kind_name(fam.kind)},
                {"parameter_count", fam.parameter_count},
                {"slots", std::move(slots)},
                {"assembly", std::move(assembly)}};
}

inline json report_to_json(const VerificationReport& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return json{{"residual_zero", rep.residual_zero}, {"checks", std::move(checks)}};
}

// The f block of a problem document, kept symbolic until the dimension is
// known (presets expand to n-1 coefficients).
struct FunctionSpec {
    std::optional<std::string> preset;  // "log" | "exp" | "monomial"
    int p = 0;                          // exponent, monomial preset only
    std::optional<Scalar> alpha;        // explicit form: expansion point / f(0)
    std::vector<Scalar> coeffs;         // explicit form: c_1, c_2, ...
};

enum class ProblemMode { direct, inverse };

struct ProblemFile {
    Matrix a;
    std::optional<std::vector<Scalar>> eigenvalues;
    FunctionSpec f;
    ProblemMode mode = ProblemMode::direct;
};

inline std::vector<Scalar> scalar_list_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    std::vector<Scalar> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(scalar_from_json(e));
    return out;
}

inline ProblemFile problem_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("problem document must be a JSON object");
    ProblemFile pf;
    if (!j.contains("A")) throw ParseError("problem is missing \"A\"");
    pf.a = matrix_from_json(j.at("A"));
    if (pf.a.rows() < 1) throw ParseError("A must be at least 1x1");

    if (j.contains("eigenvalues"))
        pf.eigenvalues = scalar_list_from_json(j.at("eigenvalues"), "eigenvalues");
    if (!pf.eigenvalues && !pf.a.is_upper_triangular())
        throw ParseError("eigenvalues are required when A is not upper triangular");
    if (pf.eigenvalues && static_cast<int>(pf.eigenvalues->size()) != pf.a.n())
        throw ParseError("eigenvalue list length must equal the dimension of A");

    if (!j.contains("f")) throw ParseError("problem is missing \"f\"");
    const json& f = j.at("f");
    if (!f.is_object()) throw ParseError("\"f\" must be an object");
    bool has_preset = f.contains("preset");
    bool has_explicit = f.contains("alpha") || f.contains("coeffs");
    if (has_preset == has_explicit)
        throw ParseError("\"f\" must have exactly one of a preset or {alpha, coeffs}");
    if (has_preset) {
        pf.f.preset = f.at("preset").get<std::string>();
        if (*pf.f.preset != "log" && *pf.f.preset != "exp" && *pf.f.preset != "monomial")
            throw ParseError("unknown preset \"" + *pf.f.preset + "\"");
        if (*pf.f.preset == "monomial") {
            if (!f.contains("p")) throw ParseError("monomial preset needs an exponent \"p\"");
            pf.f.p = f.at("p").get<int>();
            if (pf.f.p < 1) throw ParseError("monomial exponent must be positive");
        } else if (f.contains("p")) {
            throw ParseError("\"p\" is only valid with the monomial preset");
        }
    } else {
        if (!f.contains("alpha") || !f.contains("coeffs"))
            throw ParseError("explicit \"f\" needs both \"alpha\" and \"coeffs\"");
        pf.f.alpha = scalar_from_json(f.at("alpha"));
        pf.f.coeffs = scalar_list_from_json(f.at("coeffs"), "coeffs");
    }

    std::string mode = j.contains("mode") ? j.at("mode").get<std::string>() : "direct";
    if (mode == "direct") pf.mode = ProblemMode::direct;
    else if (mode == "inverse") pf.mode = ProblemMode::inverse;
    else throw ParseError("mode must be \"direct\" or \"inverse\"");
    return pf;
}

// Spectrum for the solvers: explicit list if given, else the diagonal of
// the (already validated) upper triangular A.
inline std::vector<Scalar> problem_spectrum(const ProblemFile& pf) {
    if (pf.eigenvalues) return *pf.eigenvalues;
    return pf.a.diagonal_entries();
}

inline TaylorSpec direct_spec(const ProblemFile& pf) {
    int n = pf.a.n();
    if (pf.f.preset) {
        if (*pf.f.preset == "log") return TaylorSpec::log_preset(n);
        if (*pf.f.preset == "monomial") return TaylorSpec::monomial_preset(pf.f.p, n);
        throw ParseError("preset \"exp\" describes f(XA-AX) = X; use mode \"inverse\"");
    }
    TaylorSpec spec;
    spec.alpha = *pf.f.alpha;
    spec.coeffs = pf.f.coeffs;
    spec.truncate_for_dimension(n);
    return spec;
}

inline InverseSpec inverse_spec(const ProblemFile& pf) {
    int n = pf.a.n();
    if (pf.f.preset) {
        if (*pf.f.preset == "exp") return InverseSpec::exp_preset(n);
        if (*pf.f.preset == "monomial") return InverseSpec::monomial_preset(pf.f.p, n);
        throw ParseError("preset \"log\" describes XA-AX = f(X); use mode \"direct\"");
    }
    InverseSpec spec;
    spec.f0 = *pf.f.alpha;
    spec.coeffs.c = pf.f.coeffs;
    if (spec.order() > n - 1) spec.coeffs.c.resize(static_cast<std::size_t>(n - 1));
    return spec;
}

// One document per nonblank line, with 1-based line numbers for messages.
inline std::vector<std::pair<int, json>> read_ndjson(std::istream& in) {
    std::vector<std::pair<int, json>> docs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw ParseError("line " + std::to_string(lineno) + ": invalid JSON");
        docs.emplace_back(lineno, std::move(j));
    }
    return docs;
}

// Instantiation parameters: one scalar vector per family slot, in slot
// order. {"slots": [["1", "0"], ...]}
inline std::vector<std::vector<Scalar>> params_from_json(const json& j) {
    if (!j.is_object() || !j.contains("slots"))
        throw ParseError("params document must be {\"slots\": [[...], ...]}");
    const json& slots = j.at("slots");
    if (!slots.is_array()) throw ParseError("\"slots\" must be an array of arrays");
    std::vector<std::vector<Scalar>> out;
    out.reserve(slots.size());
    for (const auto& s : slots) out.push_back(scalar_list_from_json(s, "slot"));
    return out;
}

inline json params_to_json(const std::vector<std::vector<Scalar>>& slots) {
    json arr = json::array();
    for (const auto& s : slots) {
        json inner = json::array();
        for (const auto& x : s) inner.push_back(scalar_to_json(x));
        arr.push_back(std::move(inner));
    }
    return json{{"slots", std::move(arr)}};
}

} // namespace commeq
