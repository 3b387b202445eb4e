/*
   Copyright 2026 the knormal authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "knormal/int_factor.hpp"

#include <algorithm>
#include <numeric>

namespace knormal {

namespace {

constexpr u64 kTrialBound = 1'000'000;

const std::vector<u32>& small_primes() {
    static const std::vector<u32> primes = [] {
        std::vector<bool> composite(kTrialBound + 1, false);
        std::vector<u32> out;
        for (u64 i = 2; i <= kTrialBound; ++i) {
            if (composite[i]) continue;
            out.push_back(static_cast<u32>(i));
            for (u64 j = i * i; j <= kTrialBound; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

// Brent's cycle-finding variant with a fixed parameter sequence, so the
// factorization is deterministic.
u64 pollard_brent(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        u64 power = 1, lam = 1;
        while (d == 1) {
            if (power == lam) {
                x = y;
                power *= 2;
                lam = 0;
            }
            y = (mulmod_u64(y, y, n) + c) % n;
            ++lam;
            u64 diff = x > y ? x - y : y - x;
            d = std::gcd(diff, n);
        }
        if (d != n) return d;
    }
}

void factor_rec(u64 n, IntFactorization& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back({n, 1});
        return;
    }
    u64 d = pollard_brent(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

u64 mulmod_u64(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod_u64(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // This witness set decides primality for all n < 3.3 * 10^24.
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 0; i + 1 < r; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

IntFactorization factor_u64(u64 n) {
    if (n < 1 || n >= (u64(1) << 63)) throw PreconditionViolated("factor_u64: input outside [1, 2^63)");
    IntFactorization out;
    for (u32 p : small_primes()) {
        if (u64(p) * p > n) break;
        if (n % p == 0) {
            u32 e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.push_back({p, e});
        }
    }
    if (n > 1) {
        if (n <= kTrialBound * kTrialBound && is_prime_u64(n)) {
            out.push_back({n, 1});
        } else {
            IntFactorization rest;
            factor_rec(n, rest);
            std::sort(rest.begin(), rest.end(), [](auto& a, auto& b) { return a.prime < b.prime; });
            for (const auto& f : rest) {
                if (!out.empty() && out.back().prime == f.prime)
                    out.back().exp += f.exp;
                else
                    out.push_back(f);
            }
        }
    }
    return out;
}

std::vector<u64> prime_divisors(u64 n) {
    std::vector<u64> out;
    for (const auto& f : factor_u64(n)) out.push_back(f.prime);
    return out;
}

u64 euler_phi_u64(u64 n) {
    u64 r = n;
    for (const auto& f : factor_u64(n)) r -= r / f.prime;
    return r;
}

int moebius_u64(u64 n) {
    auto fact = factor_u64(n);
    for (const auto& f : fact)
        if (f.exp > 1) return 0;
    return fact.size() % 2 == 0 ? 1 : -1;
}

std::pair<u64, u32> decompose_prime_power(u64 q) {
    if (q < 2) throw ValidationError("not a prime power: " + std::to_string(q));
    auto fact = factor_u64(q);
    if (fact.size() != 1) throw ValidationError("not a prime power: " + std::to_string(q));
    return {fact[0].prime, fact[0].exp};
}

}  // namespace knormal
