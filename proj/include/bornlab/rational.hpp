// Copyright 2026 The born-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BORNLAB_RATIONAL_HPP
#define BORNLAB_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bornlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised for every contract violation in the library. Messages are stable
/// and matched by the CLI and tests.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Parses "p/q", an integer "p", or a finite decimal "0.125" into an exact rational.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational &r);
double to_double(const Rational &r);

Rational pow(const Rational &base, std::uint64_t exponent);
BigInt ceil(const Rational &r);

BigInt binomial(std::uint64_t n, std::uint64_t k);
BigInt factorial(std::uint64_t n);

inline Rational make_rational(std::int64_t num, std::int64_t den) {
    return Rational(BigInt(num), BigInt(den));
}

}  // namespace bornlab

#endif
