#include "qmckay/lattice.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>

namespace qmckay {

std::vector<std::string> validate_system(const ChargeVectorSystem& sys) {
    std::vector<std::string> violations;
    const Eigen::Index r = sys.rows();
    const Eigen::Index c = sys.cols();
    if (sys.n_toric + 2 != c) {
        violations.push_back("expected " + std::to_string(sys.n_toric) +
                             " toric columns plus 2 brane columns, got " + std::to_string(c));
        return violations;
    }
    if (sys.brane_row < 0 || sys.brane_row >= r) {
        violations.push_back("brane row index " + std::to_string(sys.brane_row) +
                             " out of range");
        return violations;
    }
    for (Eigen::Index i = 0; i < r; ++i) {
        FramedRational sum;
        for (Eigen::Index j = 0; j < sys.n_toric; ++j) sum += sys.entry(i, j);
        if (!sum.is_zero()) {
            violations.push_back("row " + std::to_string(i) + ": toric entries sum to " +
                                 sum.to_string(sys.framing_symbol) + ", expected 0");
        }
        const FramedRational w(Rational(i == sys.brane_row ? 1 : 0));
        const FramedRational b0 = sys.entry(i, sys.n_toric);
        const FramedRational b1 = sys.entry(i, sys.n_toric + 1);
        if (!(b0 == w && b1 == -w)) {
            violations.push_back("row " + std::to_string(i) + ": brane columns (" +
                                 b0.to_string(sys.framing_symbol) + ", " +
                                 b1.to_string(sys.framing_symbol) + "), expected (" +
                                 w.to_string() + ", " + (-w).to_string() + ")");
        }
    }
    return violations;
}

std::pair<TransitionMatrix, FramingRelation> solve_transition(const ChargeVectorSystem& src,
                                                              const ChargeVectorSystem& tgt) {
    // Deliberately no validity precheck here: a doctored system is supposed
    // to surface as an inconsistency of the exact solve itself.
    if (src.rows() != tgt.rows() || src.cols() != tgt.cols())
        throw RankMismatch("charge systems have different shapes");
    const Eigen::Index r = src.rows();
    const Eigen::Index c = src.cols();

    // Columns free of the framing symbol on both sides determine T over Q.
    std::vector<Eigen::Index> free_cols;
    for (Eigen::Index j = 0; j < c; ++j) {
        bool free = true;
        for (Eigen::Index i = 0; i < r && free; ++i)
            free = src.coeff1(i, j).is_zero() && tgt.coeff1(i, j).is_zero();
        if (free) free_cols.push_back(j);
    }

    RationalMatrix src_free(r, static_cast<Eigen::Index>(free_cols.size()));
    RationalMatrix tgt_free(r, static_cast<Eigen::Index>(free_cols.size()));
    for (Eigen::Index k = 0; k < src_free.cols(); ++k) {
        src_free.col(k) = src.coeff0.col(free_cols[static_cast<std::size_t>(k)]);
        tgt_free.col(k) = tgt.coeff0.col(free_cols[static_cast<std::size_t>(k)]);
    }

    // src_free = T * tgt_free, transposed so the unknown sits on the right.
    Eigen::FullPivLU<RationalMatrix> lu(tgt_free.transpose());
    if (lu.rank() < r)
        throw RankMismatch("framing-free columns span rank " + std::to_string(lu.rank()) +
                           " < " + std::to_string(r) + "; transition not unique");
    TransitionMatrix transition{RationalMatrix(lu.solve(src_free.transpose()).transpose())};

    // Remaining columns carry the framing symbols: entry-wise the identity
    //   src0 + beta*src1 == T*tgt0   and   alpha*src1 == T*tgt1.
    const RationalMatrix lhs0 = transition.entries * tgt.coeff0;
    const RationalMatrix lhs1 = transition.entries * tgt.coeff1;
    std::optional<Rational> alpha, beta;
    for (Eigen::Index i = 0; i < r; ++i) {
        for (Eigen::Index j = 0; j < c; ++j) {
            const Rational& s1 = src.coeff1(i, j);
            if (s1.is_zero()) continue;
            Rational a = lhs1(i, j) / s1;
            Rational b = (lhs0(i, j) - src.coeff0(i, j)) / s1;
            if (alpha && !(*alpha == a && *beta == b))
                throw NoFramingRelation(
                    "framing columns are inconsistent: entry (" + std::to_string(i) + "," +
                    std::to_string(j) + ") wants " + a.to_string() + "*fhat + " + b.to_string() +
                    ", previous entries want " + alpha->to_string() + "*fhat + " +
                    beta->to_string());
            alpha = std::move(a);
            beta = std::move(b);
        }
    }
    // Framing-free source systems impose no relation; default to identity.
    FramingRelation relation{alpha.value_or(Rational(1)), beta.value_or(Rational(0))};

    // Full symbolic check of src = T*tgt after f = alpha*fhat + beta. Any
    // residual (including on framing-free columns) means no affine relation
    // reconciles the two spans.
    for (Eigen::Index i = 0; i < r; ++i) {
        for (Eigen::Index j = 0; j < c; ++j) {
            FramedRational lhs = src.entry(i, j).compose_affine(relation.scale, relation.offset);
            FramedRational rhs(lhs0(i, j), lhs1(i, j));
            if (!(lhs == rhs))
                throw NoFramingRelation("identity fails at entry (" + std::to_string(i) + "," +
                                        std::to_string(j) + "): " +
                                        lhs.to_string(tgt.framing_symbol) + " != " +
                                        rhs.to_string(tgt.framing_symbol));
        }
    }

    // The (1,-1) brane-column pattern forces the brane block of T.
    for (Eigen::Index i = 0; i < r; ++i) {
        const Rational expected(i == src.brane_row ? 1 : 0);
        if (!(transition.entries(i, tgt.brane_row) == expected))
            throw AssertionFailure("brane column pattern violated in transition row " +
                                   std::to_string(i));
    }

    return {std::move(transition), std::move(relation)};
}

std::vector<std::string> ChangeOfVariables::rules() const {
    std::vector<std::string> out;
    for (Eigen::Index a = 0; a < exponents.rows(); ++a) {
        std::string rhs;
        for (Eigen::Index b = 0; b < exponents.cols(); ++b) {
            const Rational& e = exponents(a, b);
            if (e.is_zero()) continue;
            if (!rhs.empty()) rhs += " * ";
            rhs += target_vars[static_cast<std::size_t>(b)];
            if (!(e == Rational(1))) rhs += "^(" + e.to_string() + ")";
        }
        if (rhs.empty()) rhs = "1";
        out.push_back(source_vars[static_cast<std::size_t>(a)] + " = " + rhs);
    }
    return out;
}

ChangeOfVariables change_of_variables(const TransitionMatrix& transition,
                                      const FramingRelation& /*relation*/,
                                      std::vector<std::string> source_vars,
                                      std::vector<std::string> target_vars) {
    if (static_cast<Eigen::Index>(source_vars.size()) != transition.entries.rows() ||
        static_cast<Eigen::Index>(target_vars.size()) != transition.entries.cols())
        throw AssertionFailure("variable lists do not match the transition matrix shape");
    return ChangeOfVariables{std::move(source_vars), std::move(target_vars),
                             transition.entries};
}

namespace {

// Counterclockwise from the positive x-axis, decided exactly: rays with
// angle in [0, pi) come first, then [pi, 2*pi); within a half-turn the
// cross product orders them.
bool ccw_less(const std::array<std::int64_t, 2>& a, const std::array<std::int64_t, 2>& b) {
    auto half = [](const std::array<std::int64_t, 2>& v) {
        return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1;
    };
    const int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    const std::int64_t cross = a[0] * b[1] - a[1] * b[0];
    return cross > 0;
}

} // namespace

std::vector<std::array<std::int64_t, 2>> secondary_fan_rays(
    const std::vector<std::vector<std::int64_t>>& charge_rows) {
    if (charge_rows.size() != 2)
        throw WrongRank("secondary fan needs exactly 2 charge rows, got " +
                        std::to_string(charge_rows.size()));
    if (charge_rows[0].size() != charge_rows[1].size())
        throw WrongRank("charge rows have different lengths");

    std::vector<std::array<std::int64_t, 2>> rays;
    for (std::size_t j = 0; j < charge_rows[0].size(); ++j) {
        std::int64_t x = charge_rows[0][j];
        std::int64_t y = charge_rows[1][j];
        if (x == 0 && y == 0) continue; // uncharged coordinate, no ray
        const std::int64_t g = std::gcd(std::abs(x), std::abs(y));
        std::array<std::int64_t, 2> ray{x / g, y / g};
        if (std::find(rays.begin(), rays.end(), ray) == rays.end()) rays.push_back(ray);
    }
    std::sort(rays.begin(), rays.end(), ccw_less);
    return rays;
}

} // namespace qmckay
