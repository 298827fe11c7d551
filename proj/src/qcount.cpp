#include "idem/qcount.hpp"

#include <string>

#include "idem/error.hpp"
#include "idem/rings.hpp"

namespace idem {

QCount::QCount(unsigned n_, unsigned r_, unsigned long q_) : n(n_), r(r_), q(q_)
{
    if (r > n)
        throw Error(ErrorKind::InvalidArgument, "q-count needs r <= n, got r=" + std::to_string(r) + " n=" + std::to_string(n));
    if (q < 2)
        throw Error(ErrorKind::InvalidArgument, "q-count needs q >= 2, got q=" + std::to_string(q));
}

mpz_class gaussian_binomial(const QCount& args)
{
    mpz_class num = 1, den = 1;
    for (unsigned i = 0; i < args.r; ++i) {
        mpz_class a, b;
        mpz_ui_pow_ui(a.get_mpz_t(), args.q, args.n - i);
        mpz_ui_pow_ui(b.get_mpz_t(), args.q, i + 1);
        num *= a - 1;
        den *= b - 1;
    }
    mpz_class out;
    mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return out;
}

mpz_class gaussian_binomial(unsigned n, unsigned r, unsigned long q)
{
    return gaussian_binomial(QCount(n, r, q));
}

namespace {

bool is_prime_power(unsigned long q)
{
    for (unsigned long d = 2; d * d <= q; ++d) {
        if (q % d != 0)
            continue;
        while (q % d == 0)
            q /= d;
        return q == 1;
    }
    return is_prime(q);
}

} // namespace

mpz_class idempotent_count(const QCount& args)
{
    if (!is_prime_power(args.q))
        throw Error(ErrorKind::InvalidArgument, "no field with " + std::to_string(args.q) + " elements");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), args.q, static_cast<unsigned long>(args.r) * (args.n - args.r));
    return gaussian_binomial(args) * scale;
}

mpz_class idempotent_count(unsigned n, unsigned r, unsigned long q)
{
    return idempotent_count(QCount(n, r, q));
}

} // namespace idem
