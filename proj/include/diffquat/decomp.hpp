#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "diffquat/ratfunc.hpp"

namespace diffquat {

// content * prod factor_i^mult_i reconstructs the input; factors are monic,
// squarefree and pairwise coprime.
struct SquarefreeFactorization {
    Rat content;
    std::vector<std::pair<Poly, int>> factors;
    Poly reconstruct() const;
};

SquarefreeFactorization squarefree_factor(const Poly& p); // throws on zero input

// Pairwise coprime monic factors with multiplicities whose product is the monic
// part of p. Squarefree factors are split further at their rational roots;
// root-free residuals stay as blocks.
std::vector<std::pair<Poly, int>> factor_basis(const Poly& p);

struct PartialFractions {
    struct Block {
        Poly factor;              // monic, squarefree, coprime to other blocks
        int mult;                 // denominator exponent
        std::vector<Poly> digits; // digits[j] over factor^(j+1), deg < deg factor
    };
    Poly polynomial_part;
    std::vector<Block> blocks;
    RatFunc reconstruct() const;
};

PartialFractions partial_fractions(const RatFunc& f);

// a = polynomial_part + sum residue * factor'/factor + remainder, exactly.
// Terms carry every simple-pole piece with a rational residue; everything else
// (higher-order poles, irrational residues) lands in the remainder.
struct LogDerivParts {
    Poly polynomial_part;
    std::vector<std::pair<Poly, Rat>> terms; // (pole_factor, residue)
    RatFunc reduced_remainder;
};

LogDerivParts logderiv_residues(const RatFunc& a);

// All rational roots of p, ascending; each verified by substitution.
std::vector<Rat> rational_roots(const Poly& p); // throws on zero input

// Rational residues of b/p for squarefree monic p, deg b < deg p, via the
// Rothstein-Trager resultant. Returned factors are the gcd blocks carrying
// each rational residue; `leftover` is the cofactor with no rational residue.
struct RationalResidues {
    std::vector<std::pair<Poly, Rat>> parts;
    Poly leftover;
};
RationalResidues rt_rational_residues(const Poly& b, const Poly& p);

std::optional<RatFunc> sqrt_ratfunc(const RatFunc& f);
std::optional<RatFunc> nth_root_ratfunc(const RatFunc& f, int n);
std::optional<Rat> nth_root_rat(const Rat& r, int n);

// f = squarefree * square^2 with a squarefree-polynomial, squarefree-integer
// radicand part; sqrt(f) then lives in a quadratic extension by `squarefree`.
struct SquareSplit {
    RatFunc squarefree;
    RatFunc square;
};
SquareSplit ratfunc_square_split(const RatFunc& f); // f != 0

} // namespace diffquat
