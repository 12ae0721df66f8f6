#pragma once

#include <string>
#include <utility>
#include <vector>

#include "commeq/jordan.hpp"

namespace commeq {

enum class FamilyKind { critical_nonderogatory, commutant, regular_chain, inverse_special };

inline const char* family_kind_name(FamilyKind k) {
    switch (k) {
        case FamilyKind::critical_nonderogatory: return "critical-nonderogatory";
        case FamilyKind::commutant: return "commutant";
        case FamilyKind::regular_chain: return "regular-chain";
        case FamilyKind::inverse_special: return "inverse-special";
    }
    return "?";
}

// One group of free parameters. Coordinates are 1-based and local to the
// named block (a Jordan block in the critical case, an adjacent block
// pair in a chain). Constraints are human-readable predicates that
// instantiation enforces exactly.
struct FamilySlot {
    int block = 0;
    std::vector<std::pair<int, int>> free_entries;
    std::vector<std::string> constraints;
};

// Parametric description of the full solution set: which entries are
// free, under which constraints, and how block solutions are assembled
// back through the similarity in `assembly`.
struct SolutionFamily {
    FamilyKind kind = FamilyKind::critical_nonderogatory;
    int parameter_count = 0;
    std::vector<FamilySlot> slots;
    JordanStructure assembly;
};

} // namespace commeq
