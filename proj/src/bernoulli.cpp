#include "bernoulli.h"

#include <gmpxx.h>

#include <mutex>
#include <vector>

namespace xibasin::detail {

namespace {

struct BernoulliTable
{
    std::mutex mutex;
    std::vector<mpq_class> b;                // B_0 .. B_m (B_1 = -1/2)
    std::vector<mpq_class> over_factorial;   // index k -> B_{2k}/(2k)!
};

BernoulliTable& table()
{
    static BernoulliTable t;
    return t;
}

// Extends the table through B_{2k} with the recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0.
void extend(BernoulliTable& t, int k)
{
    const int target = 2 * k;
    if (t.b.empty())
        t.b.emplace_back(1);
    while (static_cast<int>(t.b.size()) <= target) {
        const int m = static_cast<int>(t.b.size());
        if (m > 1 && m % 2 == 1) {
            t.b.emplace_back(0);
            continue;
        }
        mpz_class binom = 1; // C(m+1, 0)
        mpq_class sum = 0;
        for (int j = 0; j < m; ++j) {
            if (!(j > 1 && j % 2 == 1))
                sum += mpq_class(binom) * t.b[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        mpq_class bm = -sum / (m + 1);
        bm.canonicalize();
        t.b.push_back(bm);
    }
    if (t.over_factorial.empty())
        t.over_factorial.emplace_back(0);
    while (static_cast<int>(t.over_factorial.size()) <= k) {
        const int kk = static_cast<int>(t.over_factorial.size());
        mpz_class fact;
        mpz_fac_ui(fact.get_mpz_t(), 2 * kk);
        mpq_class q = t.b[2 * kk] / mpq_class(fact);
        q.canonicalize();
        t.over_factorial.push_back(q);
    }
}

Real to_real(const mpq_class& q, mpfr_prec_t bits)
{
    Real r(bits);
    mpfr_set_q(r.get(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

} // namespace

Real bernoulli_over_factorial(int k, mpfr_prec_t bits)
{
    auto& t = table();
    std::lock_guard lock(t.mutex);
    extend(t, k);
    return to_real(t.over_factorial[k], bits);
}

Real bernoulli_even(int k, mpfr_prec_t bits)
{
    auto& t = table();
    std::lock_guard lock(t.mutex);
    extend(t, k);
    return to_real(t.b[2 * k], bits);
}

} // namespace xibasin::detail
