#pragma once

#include "homlab/rational.hpp"

#include <vector>

namespace homlab {

/// Dense polynomial over Q, coefficients lowest degree first.
using Polynomial = std::vector<Rational>;

/// Characteristic polynomial det(xI - A) of a square rational matrix given in
/// row-major order, by the Faddeev-LeVerrier recurrence.
Polynomial characteristic_polynomial(const std::vector<Rational>& matrix, int n);

/// Number of distinct real roots of a square-free p in the open interval
/// (0, +inf), by a Sturm sequence. p(0) must be nonzero.
int sturm_positive_root_count(const Polynomial& p);

/// Yun decomposition p = c * prod_i f_i^i with square-free, pairwise coprime f_i.
/// Element i-1 holds f_i.
std::vector<Polynomial> square_free_decomposition(const Polynomial& p);

struct Inertia {
    int positive = 0;
    int zero = 0;
    int negative = 0;
};

/// Eigenvalue sign counts (with multiplicity) of a symmetric rational matrix.
Inertia symmetric_inertia(const std::vector<Rational>& matrix, int n);

}  // namespace homlab
