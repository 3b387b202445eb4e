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

#ifndef KNORMAL_COMMON_HPP
#define KNORMAL_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace knormal {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Hard cap on any field size handled by this library; orders and indices
/// must fit in 64-bit integers (intermediates use 128 bits).
inline constexpr u64 kMaxFieldSize = u64(1) << 62;

/// Default exhaustive-census cap. Overridable via KNORMAL_SIZE_GUARD.
inline constexpr u64 kDefaultCensusGuard = u64(1) << 48;

// Error taxonomy. The CLI maps these onto exit codes:
//   ValidationError -> 2, SizeGuardExceeded -> 3, OracleFailure -> 1.

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad input: rejected before any computation is trusted.
struct ValidationError : Error {
    using Error::Error;
};

/// A correctness cross-check failed. Never swallowed.
struct OracleFailure : Error {
    using Error::Error;
};

struct SizeGuardExceeded : Error {
    using Error::Error;
};

struct NotPrime : ValidationError {
    explicit NotPrime(u64 n) : ValidationError("not prime: " + std::to_string(n)) {}
};
struct NotIrreducible : ValidationError {
    explicit NotIrreducible(const std::string& what) : ValidationError("not irreducible: " + what) {}
};
struct DivisionByZero : ValidationError {
    DivisionByZero() : ValidationError("division by zero") {}
};
struct ZeroElement : ValidationError {
    ZeroElement() : ValidationError("zero element has no multiplicative order") {}
};
struct RangeOutOfBounds : ValidationError {
    RangeOutOfBounds() : ValidationError("enumeration range out of bounds") {}
};
struct NotCoprime : ValidationError {
    NotCoprime(u64 a, u64 b)
        : ValidationError("arguments not coprime: " + std::to_string(a) + ", " + std::to_string(b)) {}
};
struct CharDividesIndex : ValidationError {
    explicit CharDividesIndex(u64 d) : ValidationError("characteristic divides index " + std::to_string(d)) {}
};
struct Overflow : ValidationError {
    explicit Overflow(const std::string& what) : ValidationError("64-bit overflow in " + what) {}
};
struct NotADivisor : ValidationError {
    NotADivisor(u64 n, u64 of)
        : ValidationError(std::to_string(n) + " does not divide " + std::to_string(of)) {}
};
struct PreconditionViolated : ValidationError {
    explicit PreconditionViolated(const std::string& what) : ValidationError(what) {}
};
struct NotNormal : ValidationError {
    explicit NotNormal(u32 k)
        : ValidationError("element is " + std::to_string(k) + "-normal, not normal"), k(k) {}
    u32 k;
};

struct InternalInconsistency : OracleFailure {
    explicit InternalInconsistency(const std::string& what) : OracleFailure(what) {}
};
struct MethodDisagreement : OracleFailure {
    explicit MethodDisagreement(const std::string& what) : OracleFailure(what) {}
};
struct FormulaCensusMismatch : OracleFailure {
    explicit FormulaCensusMismatch(const std::string& what) : OracleFailure(what) {}
};

/// Deterministic 64-bit generator for sampling in tests and verify mode.
struct SplitMix64 {
    u64 state;
    explicit SplitMix64(u64 seed) : state(seed) {}
    u64 next() {
        u64 z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

}  // namespace knormal

#endif
