#pragma once

#include <gmpxx.h>

namespace idem {

/// Arguments of a q-count: r <= n and q >= 2, validated on construction.
struct QCount {
    QCount(unsigned n, unsigned r, unsigned long q);

    unsigned n;
    unsigned r;
    unsigned long q;
};

/// Gaussian binomial [n r]_q: the number of r-dimensional subspaces of F_q^n.
mpz_class gaussian_binomial(const QCount& args);
mpz_class gaussian_binomial(unsigned n, unsigned r, unsigned long q);

/// Number of rank-r idempotents in M_n(F_q): [n r]_q * q^(r(n-r)). InvalidArgument unless q is a prime power.
mpz_class idempotent_count(const QCount& args);
mpz_class idempotent_count(unsigned n, unsigned r, unsigned long q);

} // namespace idem
