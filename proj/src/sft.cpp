#include "moorehom/sft.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace moore {

namespace {

bool is_prime(int64_t p) {
    if (p < 2) return false;
    for (int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::pair<int, int> valuation_pair(const FinAbGroup& h1, int64_t p) {
    std::vector<int> vals;
    for (const auto& t : h1.primary_decomposition()) {
        int64_t x = t.to_int64();
        int v = 0;
        while (x % p == 0) {
            x /= p;
            ++v;
        }
        if (v > 0) vals.push_back(v);
    }
    vals.resize(2, 0);
    std::sort(vals.begin(), vals.end());
    return {vals[0], vals[1]};
}

}  // namespace

void FamilySpec::check() const {
    if (n < 2 || m < 2)
        throw std::invalid_argument("family parameters must be >= 2, got (" + std::to_string(n) + ", " +
                                    std::to_string(m) + ")");
}

FamilySpec FamilySpec::canonical() const {
    return n <= m ? *this : FamilySpec{m, n};
}

std::vector<FinAbGroup> full_shift_homology(int64_t n, size_t degrees) {
    if (n < 2) throw std::invalid_argument("full shift needs n >= 2, got " + std::to_string(n));
    std::vector<FinAbGroup> out(std::max<size_t>(degrees, 1));
    out[0] = FinAbGroup::cyclic(Integer(n - 1));
    return out;
}

IntegerMatrix full_shift_matrix(size_t n) {
    IntegerMatrix J(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) J(i, j) = 1;
    return J;
}

SftHomology sft_matrix_homology(const IntegerMatrix& A) {
    const size_t k = A.rows();
    if (k == 0 || A.cols() != k) throw std::invalid_argument("degenerate matrix: adjacency matrix must be square and nonempty");
    for (size_t i = 0; i < k; ++i) {
        bool row = false, col = false;
        for (size_t j = 0; j < k; ++j) {
            if (A(i, j).sign() < 0) throw std::invalid_argument("degenerate matrix: negative entry");
            row = row || !A(i, j).is_zero();
            col = col || !A(j, i).is_zero();
        }
        if (!row || !col) throw std::invalid_argument("degenerate matrix: zero row or column " + std::to_string(i));
    }
    IntegerMatrix M = IntegerMatrix::identity(k) - A.transposed();
    return SftHomology{group_of(M), FinAbGroup::free(k - matrix_rank(M))};
}

std::vector<FinAbGroup> family_integral(const FamilySpec& spec, size_t degrees) {
    spec.check();
    std::vector<FinAbGroup> out(std::max<size_t>(degrees, 1));
    out[0] = FinAbGroup::from_summands(1, {Integer(spec.n - 1), Integer(spec.m - 1)});
    return out;
}

GcdRow family_mod(const FamilySpec& spec, int64_t q) {
    spec.check();
    if (q < 1) throw std::invalid_argument("coefficient modulus must be >= 1");
    Integer a = gcd(Integer(spec.n - 1), Integer(q)), b = gcd(Integer(spec.m - 1), Integer(q));
    return GcdRow{q, FinAbGroup::from_summands(0, {Integer(q), a, b}), FinAbGroup::from_summands(0, {a, b})};
}

std::vector<GcdRow> family_table(const FamilySpec& spec, int64_t qmax) {
    std::vector<GcdRow> rows;
    for (int64_t q = 1; q <= qmax; ++q) rows.push_back(family_mod(spec, q));
    return rows;
}

H1Oracle family_h1_oracle(const FamilySpec& spec) {
    return [spec](int64_t q) { return family_mod(spec, q).h1; };
}

ClassifyResult classify(const H1Oracle& oracle, int64_t bound) {
    if (bound < 2) throw std::invalid_argument("search bound must be >= 2");
    int max_ell = 0;
    while ((int64_t{1} << (max_ell + 1)) <= bound) ++max_ell;

    ClassifyResult r;
    for (int64_t p = 2; p <= bound - 1; ++p) {
        if (!is_prime(p)) continue;
        int64_t q = 1;
        for (int ell = 1; ell <= max_ell; ++ell) {
            q *= p;
            Probe pr{p, ell, q, oracle(q), {}};
            pr.valuations = valuation_pair(pr.h1, p);
            r.probes.push_back(std::move(pr));
        }
    }
    for (int64_t n = 2; n <= bound; ++n)
        for (int64_t m = n; m <= bound; ++m) {
            FamilySpec s{n, m};
            bool ok = std::all_of(r.probes.begin(), r.probes.end(),
                                  [&](const Probe& pr) { return family_mod(s, pr.q).h1 == pr.h1; });
            if (ok) r.candidates.push_back(s);
        }
    if (r.candidates.empty()) throw std::runtime_error("no candidate ≤ " + std::to_string(bound));
    return r;
}

std::vector<std::pair<FamilySpec, FamilySpec>> collision_search(int64_t bound, int64_t qmax) {
    std::vector<FamilySpec> specs;
    for (int64_t n = 2; n <= bound; ++n)
        for (int64_t m = n; m <= bound; ++m) specs.push_back({n, m});
    std::vector<std::vector<FinAbGroup>> tables;
    for (const auto& s : specs) {
        std::vector<FinAbGroup> t;
        for (int64_t q = 1; q <= qmax; ++q) t.push_back(family_mod(s, q).h1);
        tables.push_back(std::move(t));
    }
    std::vector<std::pair<FamilySpec, FamilySpec>> out;
    for (size_t i = 0; i < specs.size(); ++i)
        for (size_t j = i + 1; j < specs.size(); ++j)
            if (tables[i] == tables[j]) out.emplace_back(specs[i], specs[j]);
    return out;
}

}  // namespace moore
