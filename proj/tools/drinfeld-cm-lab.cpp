#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dcm/cli.hpp"

namespace {

/// Flag values as typed by the user; turned into an ExperimentConfig after
/// parsing so every validation error lands in one place.
struct RawArgs {
    int q = 3;
    std::vector<std::string> discs;
    std::string deg_range;
    std::string family;
    std::uint64_t seed = 0;
    int nodes = 512;
    int truncation = 60;
    int theta_points = 32;
    double budget = 1e8;
    int jobs = 1;
    std::string out;
    std::string suite;
};

void add_common_flags(CLI::App* cmd, RawArgs& a) {
    cmd->add_option("--q", a.q, "Field size, an odd prime power")->capture_default_str();
    cmd->add_option("--disc", a.discs,
                    "Explicit discriminant in fq: text form; repeatable");
    cmd->add_option("--deg-range", a.deg_range,
                    "All squarefree inert discriminants with deg D in 'lo-hi' (or one 'd')");
    cmd->add_option("--family", a.family,
                    "Constant-field family 'constant:<unit>:<fdeg-range>'");
    cmd->add_option("--seed", a.seed, "Seed for every seeded computation")->required();
    cmd->add_option("--nodes", a.nodes, "Spectral quadrature nodes")->capture_default_str();
    cmd->add_option("--truncation", a.truncation, "Truncation degree N for series sums")
        ->capture_default_str();
    cmd->add_option("--theta-points", a.theta_points, "Grid size for t and theta sweeps")
        ->capture_default_str();
    cmd->add_option("--budget", a.budget,
                    "Cap on q^(deg D) enumeration work per discriminant")
        ->capture_default_str();
    cmd->add_option("--jobs", a.jobs, "Worker threads over discriminants")
        ->capture_default_str();
    cmd->add_option("--out", a.out,
                    "Artifact base path; writes <out>.csv / <out>.json instead of stdout");
}

dcm::ExperimentConfig build_config(const RawArgs& a) {
    dcm::ExperimentConfig cfg;
    cfg.q = a.q;
    cfg.theta_points = a.theta_points;
    cfg.truncation = a.truncation;
    cfg.nodes = a.nodes;
    cfg.seed = a.seed;
    cfg.budget = a.budget;
    cfg.jobs = a.jobs;
    cfg.out = a.out;

    int sources = (!a.discs.empty() ? 1 : 0) + (!a.deg_range.empty() ? 1 : 0) +
                  (!a.family.empty() ? 1 : 0);
    if (sources != 1)
        throw dcm::ConfigError(
            "exactly one discriminant source is required: --disc, --deg-range, or --family");
    if (!a.discs.empty()) {
        cfg.source = dcm::DiscSource::ExplicitList;
        for (const std::string& text : a.discs)
            cfg.discs.push_back(dcm::parse_poly_arg(text, cfg.q));
    } else if (!a.deg_range.empty()) {
        cfg.source = dcm::DiscSource::DegreeRange;
        auto [lo, hi] = dcm::parse_range(a.deg_range);
        cfg.deg_lo = lo;
        cfg.deg_hi = hi;
    } else {
        dcm::parse_family(a.family, cfg);
    }
    return cfg;
}

void write_file(const std::string& path, const std::string& payload) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw dcm::ConfigError("cannot open output path '" + path + "'");
    os << payload;
    if (!os) throw dcm::ConfigError("failed writing '" + path + "'");
}

int emit(const dcm::CommandResult& res, const std::string& out) {
    if (out.empty()) {
        if (!res.csv.empty()) std::cout << res.csv;
        if (!res.json.empty()) std::cout << res.json;
    } else {
        if (!res.csv.empty()) write_file(out + ".csv", res.csv);
        if (!res.json.empty()) write_file(out + ".json", res.json);
    }
    return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CM points of rank 2 modules over F_q[T]: class sets, reduction\n"
                 "histograms, L-series growth, and exact identity suites."};
    app.require_subcommand(1);

    RawArgs a;
    CLI::App* distribution = app.add_subcommand(
        "distribution", "Reduction-vertex histogram per discriminant against mu");
    CLI::App* verify = app.add_subcommand("verify", "Run exact/numeric identity suites");
    verify->add_option("--suite", a.suite,
                       "Comma-separated: eisenstein-class-sum, zhang, eigen, hecke, "
                       "class-number, moebius, mean-zero, spectral; empty runs nothing");
    CLI::App* lgrowth =
        app.add_subcommand("lgrowth", "Critical-line |L| against class number growth");
    CLI::App* classset = app.add_subcommand("classset", "Dump canonical class sets");
    CLI::App* lpoly = app.add_subcommand("lpoly", "Dump L-polynomial coefficient windows");
    for (CLI::App* cmd : {distribution, verify, lgrowth, classset, lpoly})
        add_common_flags(cmd, a);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        dcm::ExperimentConfig cfg = build_config(a);
        dcm::CommandResult res;
        if (distribution->parsed()) res = dcm::cmd_distribution(cfg);
        else if (verify->parsed()) res = dcm::cmd_verify(a.suite, cfg);
        else if (lgrowth->parsed()) res = dcm::cmd_lgrowth(cfg);
        else if (classset->parsed()) res = dcm::cmd_classset(cfg);
        else res = dcm::cmd_lpoly(cfg);
        return emit(res, cfg.out);
    } catch (const dcm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
