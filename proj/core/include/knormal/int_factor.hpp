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

#ifndef KNORMAL_INT_FACTOR_HPP
#define KNORMAL_INT_FACTOR_HPP

#include <utility>
#include <vector>

#include "knormal/common.hpp"

namespace knormal {

/// One (prime, exponent) entry of an integer factorization.
struct IntFactor {
    u64 prime;
    u32 exp;
    bool operator==(const IntFactor&) const = default;
};

/// Complete factorization, primes strictly increasing.
using IntFactorization = std::vector<IntFactor>;

u64 mulmod_u64(u64 a, u64 b, u64 m);
u64 powmod_u64(u64 base, u64 exp, u64 m);

/// Deterministic Miller-Rabin, complete for 64-bit inputs.
bool is_prime_u64(u64 n);

/// Trial division below 10^6, then Pollard rho (Brent) for the rest.
/// Precondition: 1 <= n < 2^63. n = 1 yields an empty list.
IntFactorization factor_u64(u64 n);

/// Distinct prime divisors, increasing.
std::vector<u64> prime_divisors(u64 n);

u64 euler_phi_u64(u64 n);

/// Moebius function; 0 on non-squarefree input.
int moebius_u64(u64 n);

/// Splits a prime power q = p^s into (p, s); throws ValidationError when q
/// is not a prime power.
std::pair<u64, u32> decompose_prime_power(u64 q);

}  // namespace knormal

#endif
