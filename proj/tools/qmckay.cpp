// Command-line front end: load geometry bundles, run the correspondence
// pipeline, evaluate truncated superpotential series, print secondary-fan
// rays, and run the arithmetic self-test suite.
//
// Exit codes
//   verify:   0 pass, 2 coefficient mismatch, 3 structural error, 1 usage/IO
//   eval:     0 ok, 4 non-generic framing, 1 usage/IO
//   fan:      0 ok, 5 wrong rank, 1 usage/IO
//   selftest: 0 ok, 2 property failure, 1 usage

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "qmckay/bundle_io.hpp"
#include "qmckay/selftest.hpp"
#include "qmckay/verify.hpp"

namespace {

using namespace qmckay;

GeometryBundle load_or_die(const std::string& file) {
    try {
        return load_bundle(file);
    } catch (const Error& e) {
        std::cerr << "error: " << file << ": " << e.what() << "\n";
        std::exit(1);
    }
}

Rational parse_framing(const std::string& text) {
    try {
        return parse_rational(text);
    } catch (const Error& e) {
        std::cerr << "error: bad framing value: " << e.what() << "\n";
        std::exit(1);
    }
}

void print_report_summary(const VerificationReport& report) {
    std::cout << "source:          " << report.source_name << "\n";
    std::cout << "target:          " << report.target_name << "\n";
    std::cout << "framing_hat:     " << report.framing_hat << "\n";
    std::cout << "m0_max:          " << report.m0_max << "\n";
    if (report.derived) {
        std::cout << "framing_relation: f = " << report.relation.scale << "*fhat + "
                  << report.relation.offset << "  (f = " << report.framing << ")\n";
        for (const std::string& rule : report.cov.rules())
            std::cout << "substitution:    " << rule << "\n";
        std::cout << "s1:              " << report.s1.str() << "\n";
        std::cout << "admissible:      " << report.admissible_source << " indices\n";
        std::cout << "matched_terms:   " << report.matched_terms << "\n";
        if (report.collisions) std::cout << "collisions:      " << report.collisions << "\n";
    }
    const std::size_t cap = 20;
    const std::size_t mismatches = report.diff.mismatches.size();
    for (std::size_t i = 0; i < mismatches && i < cap; ++i) {
        const DiffEntry& e = report.diff.mismatches[i];
        std::cout << "mismatch:        " << e.monomial.to_string() << ": "
                  << e.left.to_string() << " != " << e.right.to_string() << "\n";
    }
    if (mismatches > cap)
        std::cout << "mismatch:        ... " << (mismatches - cap) << " more (see --report)\n";
    for (std::size_t i = 0; i < report.diff.left_only.size() && i < cap; ++i)
        std::cout << "left_only:       " << report.diff.left_only[i].to_string() << "\n";
    for (std::size_t i = 0; i < report.diff.right_only.size() && i < cap; ++i)
        std::cout << "right_only:      " << report.diff.right_only[i].to_string() << "\n";
    switch (report.status) {
        case VerificationReport::Status::pass: std::cout << "status:          pass\n"; break;
        case VerificationReport::Status::fail:
            std::cout << "status:          fail (" << mismatches << " mismatches, "
                      << report.diff.left_only.size() << " left-only, "
                      << report.diff.right_only.size() << " right-only)\n";
            break;
        case VerificationReport::Status::error:
            std::cout << "status:          error at stage " << report.stage << "\n";
            break;
    }
}

int cmd_verify(const std::string& source_file, const std::string& target_file,
               const std::string& framing_hat, long long m0_max, const std::string& report_file,
               int jobs) {
    const GeometryBundle source = load_or_die(source_file);
    const GeometryBundle target = load_or_die(target_file);
    const Rational fhat = parse_framing(framing_hat);

    const VerificationReport report = verify_correspondence(source, target, fhat, m0_max, jobs);

    print_report_summary(report);
    if (report.status == VerificationReport::Status::error)
        std::cerr << "error: stage " << report.stage << ": " << report.message << "\n";

    if (!report_file.empty()) {
        std::ofstream out(report_file);
        if (!out) {
            std::cerr << "error: cannot write report to " << report_file << "\n";
            return 1;
        }
        out << report_to_json(report).dump(2) << "\n";
    }

    switch (report.status) {
        case VerificationReport::Status::pass: return 0;
        case VerificationReport::Status::fail: return 2;
        case VerificationReport::Status::error: return 3;
    }
    return 3;
}

int cmd_eval(const std::string& bundle_file, const std::string& framing, long long m0_max,
             const std::string& out_file, int jobs) {
    const GeometryBundle bundle = load_or_die(bundle_file);
    const Rational f = parse_framing(framing);
    try {
        const PuiseuxSeries series = build(bundle.spec, f, m0_max, jobs);
        const std::string text = series_to_json(series).dump(2);
        if (out_file.empty()) {
            std::cout << text << "\n";
        } else {
            std::ofstream out(out_file);
            if (!out) {
                std::cerr << "error: cannot write series to " << out_file << "\n";
                return 1;
            }
            out << text << "\n";
        }
        return 0;
    } catch (const NonGenericFraming& e) {
        std::cerr << "error: non-generic framing: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_fan(const std::string& bundle_file) {
    const GeometryBundle bundle = load_or_die(bundle_file);
    try {
        const auto rays = secondary_fan_rays(bundle.glsm_rows);
        for (const auto& ray : rays) std::cout << "(" << ray[0] << "," << ray[1] << ")\n";
        return 0;
    } catch (const WrongRank& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }
}

int cmd_selftest(std::uint64_t seed, bool corrupt_oracle) {
    const SelftestResult result = run_selftest(seed, corrupt_oracle);
    std::printf("gamma cases:       %d\n", result.gamma_cases);
    std::printf("max rel error:     %.3e\n", result.max_rel_error);
    for (const std::string& failure : result.failures) std::cout << "FAIL " << failure << "\n";
    std::cout << (result.pass ? "selftest: pass" : "selftest: FAIL") << "\n";
    return result.pass ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact disc-potential correspondence checker for toric CY3 orbifolds"};
    app.require_subcommand(1);

    int jobs = 1;

    auto* verify = app.add_subcommand(
        "verify", "Check W(source) = s1 * W(target) under the derived change of variables");
    std::string orbifold_file, resolution_file, framing_hat, report_file;
    long long m0_max = 0;
    verify->add_option("--orbifold", orbifold_file, "source bundle file")->required();
    verify->add_option("--resolution", resolution_file, "target bundle file")->required();
    verify->add_option("--framing-hat", framing_hat, "target framing fhat (rational)")
        ->required();
    verify->add_option("--m0-max", m0_max, "brane-index truncation bound")->required();
    verify->add_option("--report", report_file, "write the full JSON report here");
    verify->add_option("--jobs", jobs, "worker threads for term evaluation")
        ->envname("QMCKAY_JOBS");

    auto* eval = app.add_subcommand("eval", "Evaluate one truncated superpotential series");
    std::string bundle_file, framing, out_file;
    eval->add_option("--bundle", bundle_file, "bundle file")->required();
    eval->add_option("--framing", framing, "framing value (rational)")->required();
    eval->add_option("--m0-max", m0_max, "brane-index truncation bound")->required();
    eval->add_option("--out", out_file, "write the series JSON here");
    eval->add_option("--jobs", jobs, "worker threads for term evaluation")
        ->envname("QMCKAY_JOBS");

    auto* fan = app.add_subcommand("fan", "Print the secondary-fan rays of a bundle");
    std::string fan_bundle;
    fan->add_option("--bundle", fan_bundle, "bundle file")->required();

    auto* selftest = app.add_subcommand("selftest", "Run the arithmetic oracle suite");
    std::uint64_t seed = 20260810;
    bool corrupt_oracle = false;
    selftest->add_option("--seed", seed, "RNG seed for the sample set");
    selftest->add_flag("--corrupt-oracle", corrupt_oracle,
                       "negative control: perturb one Lanczos constant")
        ->group(""); // test fixture, hidden from help

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    if (verify->parsed())
        return cmd_verify(orbifold_file, resolution_file, framing_hat, m0_max, report_file, jobs);
    if (eval->parsed()) return cmd_eval(bundle_file, framing, m0_max, out_file, jobs);
    if (fan->parsed()) return cmd_fan(fan_bundle);
    if (selftest->parsed()) return cmd_selftest(seed, corrupt_oracle);
    return 1;
}
