#ifndef GAPFIELD_FORMAT_HPP
#define GAPFIELD_FORMAT_HPP

#include <string>

// Deterministic numeric formatting for CSV/JSON emission: shortest decimal
// that round-trips the double, at most 17 significant digits, '.' separator,
// locale-independent.

namespace gapfield {

std::string format_double(double v);

}  // namespace gapfield

#endif
