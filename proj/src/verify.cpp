#include "qmckay/verify.hpp"

#include <numeric>

namespace qmckay {

namespace {

int common_cyclotomic_order(const GeometryBundle& a, const GeometryBundle& b) {
    return 2 * std::lcm(a.spec.root_order, b.spec.root_order);
}

} // namespace

VerificationReport verify_correspondence(const GeometryBundle& source,
                                         const GeometryBundle& target,
                                         const Rational& framing_hat, long long m0_max,
                                         int jobs) {
    VerificationReport report;
    report.source_name = source.name;
    report.target_name = target.name;
    report.framing_hat = framing_hat;
    report.m0_max = m0_max;
    report.jobs = jobs;

    std::string stage = "solve_transition";
    try {
        auto [transition, relation] = solve_transition(source.system, target.system);
        report.transition = transition;
        report.relation = relation;
        report.framing = relation.apply(framing_hat);

        stage = "change_of_variables";
        report.cov = change_of_variables(transition, relation, source.spec.variables,
                                         target.spec.variables);
        // The brane column pattern of T makes the brane variable map to the
        // target brane variable times a monomial in the others.
        const Eigen::Index bs = source.system.brane_row;
        const Eigen::Index bt = target.system.brane_row;
        if (!(report.cov.exponents(bs, bt) == Rational(1)))
            throw AssertionFailure("brane variable does not map onto the target brane variable");

        stage = "index_correspondence";
        const IndexCorrespondence correspondence = index_correspondence(
            report.cov, source.spec, target.spec, report.framing, framing_hat, m0_max);
        report.admissible_source = static_cast<long long>(correspondence.pairs.size());
        report.admissible_target = report.admissible_source;

        stage = "determine_s1";
        report.s1 = determine_s1(source.spec, target.spec, correspondence, report.framing,
                                 framing_hat);
        report.derived = true;

        stage = "build";
        const int order = common_cyclotomic_order(source, target);
        PuiseuxSeries w_source = build(source.spec, report.framing, m0_max, jobs, order);
        PuiseuxSeries w_target = build(target.spec, framing_hat, m0_max, jobs, order);
        report.source_terms = static_cast<long long>(w_source.size());
        report.target_terms = static_cast<long long>(w_target.size());

        stage = "substitute";
        SubstitutionResult substituted = substitute(w_source, report.cov);
        report.collisions = substituted.collisions;

        stage = "scale";
        PuiseuxSeries scaled = scale(w_target, report.s1);

        stage = "compare";
        report.diff = compare(substituted.series, scaled);
        report.matched_terms = static_cast<long long>(substituted.series.size()) -
                               static_cast<long long>(report.diff.mismatches.size()) -
                               static_cast<long long>(report.diff.left_only.size());
        report.status =
            report.diff.empty() ? VerificationReport::Status::pass : VerificationReport::Status::fail;
    } catch (const Error& e) {
        report.status = VerificationReport::Status::error;
        report.stage = stage;
        report.message = e.what();
    }
    return report;
}

namespace {

Json matrix_to_json(const RationalMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

Json report_to_json(const VerificationReport& report, std::size_t diff_cap) {
    Json j;
    j["inputs"] = Json{{"source", report.source_name},
                       {"target", report.target_name},
                       {"framing_hat", report.framing_hat.to_string()},
                       {"m0_max", report.m0_max},
                       {"jobs", report.jobs}};

    if (report.derived) {
        Json derived;
        derived["transition"] = matrix_to_json(report.transition.entries);
        derived["row_order"] = report.cov.source_vars;
        derived["column_order"] = report.cov.target_vars;
        derived["framing_relation"] = Json{{"scale", report.relation.scale.to_string()},
                                           {"offset", report.relation.offset.to_string()}};
        derived["framing"] = report.framing.to_string();
        derived["change_of_variables"] = report.cov.rules();
        derived["s1"] = report.s1.str();
        j["derived"] = std::move(derived);
    }

    j["counts"] = Json{{"admissible_source", report.admissible_source},
                       {"admissible_target", report.admissible_target},
                       {"source_terms", report.source_terms},
                       {"target_terms", report.target_terms},
                       {"matched_terms", report.matched_terms},
                       {"collisions", report.collisions}};

    Json diff;
    diff["total_mismatches"] = report.diff.mismatches.size();
    diff["total_left_only"] = report.diff.left_only.size();
    diff["total_right_only"] = report.diff.right_only.size();
    Json mismatches = Json::array();
    for (std::size_t i = 0; i < report.diff.mismatches.size() && i < diff_cap; ++i) {
        const DiffEntry& e = report.diff.mismatches[i];
        mismatches.push_back(Json{{"monomial", monomial_to_json(e.monomial)},
                                  {"left", cyclotomic_to_json(e.left)},
                                  {"right", cyclotomic_to_json(e.right)}});
    }
    diff["mismatches"] = std::move(mismatches);
    Json left_only = Json::array();
    for (std::size_t i = 0; i < report.diff.left_only.size() && i < diff_cap; ++i)
        left_only.push_back(monomial_to_json(report.diff.left_only[i]));
    diff["left_only"] = std::move(left_only);
    Json right_only = Json::array();
    for (std::size_t i = 0; i < report.diff.right_only.size() && i < diff_cap; ++i)
        right_only.push_back(monomial_to_json(report.diff.right_only[i]));
    diff["right_only"] = std::move(right_only);
    diff["truncated"] = report.diff.mismatches.size() > diff_cap ||
                        report.diff.left_only.size() > diff_cap ||
                        report.diff.right_only.size() > diff_cap;
    j["diff"] = std::move(diff);

    const char* status = report.status == VerificationReport::Status::pass   ? "pass"
                         : report.status == VerificationReport::Status::fail ? "fail"
                                                                             : "error";
    j["status"] = Json{{"result", status}, {"stage", report.stage}, {"message", report.message}};
    return j;
}

} // namespace qmckay
