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

#include "bornlab/rational.hpp"

#include <cctype>

namespace bornlab {

namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
    if (digits.empty()) {
        throw Error("malformed number '" + std::string(whole) + "'");
    }
    BigInt v = 0;
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw Error("malformed number '" + std::string(whole) + "'");
        }
        v = v * 10 + (c - '0');
    }
    return v;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational r;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_integer(trim(s.substr(0, slash)), text);
        BigInt den = parse_integer(trim(s.substr(slash + 1)), text);
        if (den == 0) {
            throw Error("zero denominator in '" + std::string(text) + "'");
        }
        r = Rational(num, den);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = s.substr(0, dot);
        std::string_view frac_part = s.substr(dot + 1);
        if (int_part.empty() && frac_part.empty()) {
            throw Error("malformed number '" + std::string(text) + "'");
        }
        BigInt whole = int_part.empty() ? BigInt(0) : parse_integer(int_part, text);
        BigInt frac = frac_part.empty() ? BigInt(0) : parse_integer(frac_part, text);
        BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac_part.size()));
        r = Rational(whole * scale + frac, scale);
    } else {
        r = Rational(parse_integer(s, text));
    }
    return negative ? Rational(-r) : r;
}

std::string to_string(const Rational &r) {
    if (boost::multiprecision::denominator(r) == 1) {
        return boost::multiprecision::numerator(r).str();
    }
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

double to_double(const Rational &r) {
    return r.convert_to<double>();
}

Rational pow(const Rational &base, std::uint64_t exponent) {
    Rational result = 1;
    Rational b = base;
    while (exponent > 0) {
        if (exponent & 1) result *= b;
        exponent >>= 1;
        if (exponent) b *= b;
    }
    return result;
}

BigInt ceil(const Rational &r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    BigInt q = num / den;
    if (num % den != 0 && num > 0) {
        q += 1;
    }
    return q;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
    }
    return result;
}

BigInt factorial(std::uint64_t n) {
    BigInt result = 1;
    for (std::uint64_t i = 2; i <= n; ++i) result *= i;
    return result;
}

}  // namespace bornlab
