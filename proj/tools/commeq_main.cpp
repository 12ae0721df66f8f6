#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "commeq/cli.hpp"

// Thin argv front end; all command logic lives in commeq/cli.hpp so the
// test suite can call it in-process.

namespace {

void setup_analyze(CLI::App& app, int& rc) {
    auto* cmd = app.add_subcommand("analyze",
                                   "classify a problem: expansion point, existence, chains");
    auto opt = std::make_shared<commeq::cli::AnalyzeOptions>();
    cmd->add_option("--problem", opt->problem, "problem file (line-delimited JSON)")
        ->required()
        ->type_name("FILE");
    cmd->callback([opt, &rc]() { rc = commeq::cli::cmd_analyze(*opt, std::cout, std::cerr); });
}

void setup_solve(CLI::App& app, int& rc) {
    auto* cmd = app.add_subcommand("solve", "emit the solution family and optionally an instance");
    auto opt = std::make_shared<commeq::cli::SolveOptions>();
    cmd->add_option("--problem", opt->problem, "problem file (single JSON document)")
        ->required()
        ->type_name("FILE");
    cmd->add_option("--params", opt->params, "instantiation parameters, one vector per slot")
        ->type_name("FILE");
    cmd->add_option("--random-seed", opt->seed, "sample integer parameters deterministically")
        ->type_name("INT");
    cmd->add_option("--range", opt->range, "sampling range [-m, m] (default 10)")
        ->type_name("INT");
    cmd->add_option("--out", opt->out, "write output here instead of stdout")->type_name("FILE");
    cmd->callback([opt, &rc]() { rc = commeq::cli::cmd_solve(*opt, std::cout, std::cerr); });
}

void setup_verify(CLI::App& app, int& rc) {
    auto* cmd = app.add_subcommand("verify", "re-check solution matrices against a problem");
    auto opt = std::make_shared<commeq::cli::VerifyOptions>();
    cmd->add_option("--problem", opt->problem, "problem file (line-delimited JSON)")
        ->required()
        ->type_name("FILE");
    cmd->add_option("--solution", opt->solution, "matrices to check (solve output works as is)")
        ->required()
        ->type_name("FILE");
    cmd->add_option("--out", opt->out, "write reports here instead of stdout")->type_name("FILE");
    cmd->callback([opt, &rc]() { rc = commeq::cli::cmd_verify(*opt, std::cout, std::cerr); });
}

void setup_pr_polys(CLI::App& app, int& rc) {
    auto* cmd = app.add_subcommand("pr-polys",
                                   "print the chain coefficient polynomials P_2 .. P_rmax");
    auto opt = std::make_shared<commeq::cli::PrPolysOptions>();
    cmd->add_option("--rmax", opt->rmax, "highest index to compute (default 6)")->type_name("INT");
    cmd->add_option("--subst", opt->subst, "also evaluate at a preset (supported: log)")
        ->type_name("NAME");
    cmd->callback([opt, &rc]() { rc = commeq::cli::cmd_pr_polys(*opt, std::cout, std::cerr); });
}

void setup_special(CLI::App& app, int& rc) {
    auto* cmd = app.add_subcommand("special", "closed-form families for the squared commutator");
    auto opt = std::make_shared<commeq::cli::SpecialOptions>();
    cmd->add_option("--family", opt->family, "dim3 (u,v,w,q,r) or square (u,v,a,b,c)")
        ->required()
        ->type_name("NAME");
    cmd->add_option("--params", opt->params, "comma-separated member parameters")
        ->type_name("LIST");
    cmd->add_option("--random-seed", opt->seed, "sample a valid member deterministically")
        ->type_name("INT");
    cmd->add_option("--range", opt->range, "sampling range [-m, m] (default 10)")
        ->type_name("INT");
    cmd->add_option("--out", opt->out, "write output here instead of stdout")->type_name("FILE");
    cmd->callback([opt, &rc]() { rc = commeq::cli::cmd_special(*opt, std::cout, std::cerr); });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact solver for commutator equations XA-AX = f(X) and f(XA-AX) = X"};
    app.require_subcommand(1);
    int rc = 0;
    setup_analyze(app, rc);
    setup_solve(app, rc);
    setup_verify(app, rc);
    setup_pr_polys(app, rc);
    setup_special(app, rc);
    CLI11_PARSE(app, argc, argv);
    return rc;
}
