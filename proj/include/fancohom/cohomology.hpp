#pragma once

#include <string>
#include <vector>

#include "fancohom/fan.hpp"
#include "fancohom/ishida.hpp"

namespace fancohom {

/* One cohomology group of a cochain complex of free abelian groups, in the
 * shape Z^free + Z/t_1 + ... + Z/t_k with t_1 | t_2 | ... and every t_i > 1. */
struct CohomologyGroup {
    Index free_rank = 0;
    std::vector<Integer> torsion;

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    bool operator==(const CohomologyGroup& other) const {
        return free_rank == other.free_rank && torsion == other.torsion;
    }
};

std::string to_string(const CohomologyGroup& g);

/**
 * H^q of the complex, computed integrally: a basis of the kernel of d^q, the
 * coordinates of the image of d^(q-1) inside it, and the Smith form of the
 * coordinate matrix.  The free rank is recomputed independently over Q by
 * Gaussian elimination and the two answers are compared on every call.
 */
CohomologyGroup cohomology(const CochainComplex& c, int q);

/** All groups of the complex, for q = 0 .. degrees() - 1. */
std::vector<CohomologyGroup> cohomology_groups(const CochainComplex& c);

/* The full table H^q(Delta, Lambda^p) of a fan, 0 <= p, q <= ambient rank.
 * Entries outside the stored range are zero. */
struct CohomologyTable {
    Index ambient_rank = 0;
    std::vector<std::vector<CohomologyGroup>> groups;  // groups[p][q]

    const CohomologyGroup& group(int p, int q) const;
    Index free_rank(int p, int q) const { return group(p, q).free_rank; }
};

/**
 * Compute the whole table.  The exterior degrees p are independent of one
 * another and are processed in parallel when the environment variable
 * ISHIDA_THREADS asks for more than one worker.
 */
CohomologyTable cohomology_table(const Fan& f);

/** b_l = sum over p + q = l of the free rank of H^q(Lambda^p). */
std::vector<long long> betti_numbers(const CohomologyTable& t);

/**
 * Alternating sum of the ranks of C^q(Lambda^p) straight from the f-vector:
 * chi_p = sum over q of (-1)^q |Delta(q)| C(r - q, p - q).  This never looks
 * at the differentials, so it cross-checks the computed cohomology through
 * rank-nullity.  `flip_sign` negates the result; it exists so that a
 * deliberately wrong oracle can demonstrate what a failed verification looks
 * like.
 */
Integer euler_oracle(const Fan& f, int p, bool flip_sign = false);

/** Alternating sum of the complex ranks. */
Integer euler_from_ranks(const CochainComplex& c);

/** Alternating sum of the free ranks of the groups. */
Integer euler_from_cohomology(const std::vector<CohomologyGroup>& groups);

/* Mechanical verification of the vanishing statements.  Each regime states
 * its hypotheses, runs every check it can, and reports one line per check.
 * A fan that does not satisfy the hypotheses is not a failure of the
 * statement, so it gets the separate `hypothesis_violation` verdict. */

enum class Verdict { pass, fail, hypothesis_violation };

struct CheckLine {
    std::string name;
    bool ok = true;
    std::string detail;
};

struct VerifyOptions {
    bool flip_euler_sign = false;
};

struct Report {
    std::string regime;
    Verdict verdict = Verdict::pass;
    std::string hypothesis_note;  // set when the verdict is hypothesis_violation
    std::vector<CheckLine> checks;
};

/* Face fan of a single simplicial cone: cohomology sits in degree 0 with the
 * predicted rank. */
Report verify_single_cone(const Fan& f, const VerifyOptions& opt = {});

/* Complete simplicial fan: rational cohomology concentrates on the diagonal
 * q = p, the diagonal ranks are symmetric with ends 1, odd Betti numbers
 * vanish, and the Euler characteristics match the f-vector oracle. */
Report verify_complete_simplicial(const Fan& f, const VerifyOptions& opt = {});

/* Complete simplicial fan with a marked ray `rho`: the complex splits along
 * the star, the star part is the collapsed fan's complex shifted by one in
 * both degrees, and the cohomology of the remainder concentrates on q = p. */
Report verify_star_removal(const Fan& f, Index rho, const VerifyOptions& opt = {});

/* Simplicial fan with convex full-dimensional support: coning the boundary
 * to one new ray completes the fan, removing the new star recovers it, and
 * its cohomology concentrates on q = p. */
Report verify_convex_support(const Fan& f, const VerifyOptions& opt = {});

/* Fans over the graph of an integral piecewise linear function on a complete
 * simplicial base: the upper fan has the cohomology of the base, the flat
 * part concentrates in degrees p - 1 and p, collapsing the downward ray of
 * the closed-up fan recovers the base, and the star sequence splits
 * degreewise. */
Report verify_graph_transfer(const Fan& base, const std::vector<Integer>& eta,
                             const VerifyOptions& opt = {});

}  // namespace fancohom
