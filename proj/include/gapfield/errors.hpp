#ifndef GAPFIELD_ERRORS_HPP
#define GAPFIELD_ERRORS_HPP

#include <stdexcept>

namespace gapfield {

// series/iteration failed to converge within its term or iteration budget
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// the two decompositions of the series constant M disagree beyond tolerance
class decomposition_mismatch_error : public numeric_error {
 public:
  decomposition_mismatch_error(const std::string& what, double mismatch)
      : numeric_error(what), relative_mismatch(mismatch) {}
  double relative_mismatch;
};

}  // namespace gapfield

#endif
