#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <string>

#include "endo/error.hpp"

namespace endo {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Real = long double;
using Complex = std::complex<long double>;

inline Rational parse_rational(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        require(den != 0, ErrorKind::InvalidInput, "zero denominator in '" + s + "'");
        return Rational(num, den);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(ErrorKind::InvalidInput, "not a rational number: '" + s + "'");
    }
}

inline std::string to_string(const Rational& r) { return r.str(); }

inline Real to_real(const Rational& r) {
    // numerator/denominator may overflow long double individually
    using F = boost::multiprecision::cpp_bin_float_50;
    F q = F(boost::multiprecision::numerator(r)) / F(boost::multiprecision::denominator(r));
    return static_cast<Real>(q);
}

inline Complex to_complex(const Rational& r) { return Complex(to_real(r), 0); }

// Principal square root, Re >= 0 and ties toward Im >= 0 (negative zero is normalised first).
inline Complex csqrt(Complex z) {
    if (z.imag() == 0) z = Complex(z.real(), 0.0L);
    Complex r = std::sqrt(z);
    if (r.real() == 0 && r.imag() < 0) r = -r;
    return r;
}

}  // namespace endo
