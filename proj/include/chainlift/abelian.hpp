/**
 * Abelianization of a finitely presented group via the Smith normal form of
 * its relator exponent matrix.
 */
#ifndef CHAINLIFT_ABELIAN_HPP
#define CHAINLIFT_ABELIAN_HPP

#include <cstdint>
#include <vector>

#include "chainlift/homotopy.hpp"
#include "chainlift/word.hpp"

namespace chainlift {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

struct AbelianInvariants
{
    std::size_t free_rank = 0;
    std::vector<std::int64_t> torsion;   // invariant factors > 1, each dividing the next

    bool operator==(const AbelianInvariants&) const = default;
};

/**
 * Smith normal form D = U * M * V of an integer matrix.
 *
 * Only the column transform V is tracked: the quotient Z^cols / rowspace(M)
 * is isomorphic to the direct sum of Z / d_i, and x -> x V gives coordinates
 * in that decomposition. Arithmetic is checked; overflow throws
 * `UnsupportedError`.
 */
struct SmithForm
{
    std::vector<std::int64_t> diagonal;   // nonzero pivots d_1 | d_2 | ..., all positive
    IntMatrix column_transform;           // cols x cols
};

SmithForm smithNormalForm(IntMatrix matrix, std::size_t cols);

class Abelianization
{
    private:
        std::size_t generators_ = 0;
        IntMatrix transform_;
        std::vector<std::int64_t> moduli_;   // per transformed coordinate; 0 = free, 1 = trivial

    public:
        explicit Abelianization(const GroupPresentation& presentation);

        AbelianInvariants invariants() const;

        /**
         * Image of a word: torsion coordinates first (reduced into
         * [0, d)), then free coordinates.
         */
        std::vector<std::int64_t> image(const Word& word) const;
};

/** Exponent-sum matrix of the relators (rows) over the generators (columns). */
IntMatrix relatorMatrix(const GroupPresentation& presentation);

AbelianInvariants abelianization(const GroupPresentation& presentation);

}   // namespace chainlift

#endif
