#pragma once

#include <string>

#include <gmpxx.h>

namespace g2 {

using Rational = mpq_class;

std::string rational_str(const Rational& r);  // "num" or "num/den"
Rational rational_from_str(const std::string& s);

}  // namespace g2
