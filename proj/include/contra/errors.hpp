#ifndef CONTRA_ERRORS_HPP_
#define CONTRA_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace contra {

// Input data violates a domain invariant (bad group summary, bad record).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A caller-supplied parameter is out of range (draw count, alpha, threshold).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Posterior draws produced a non-finite interval bound.
class DegenerateDrawError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownDatasetError : public std::out_of_range {
 public:
  explicit UnknownDatasetError(const std::string& name)
      : std::out_of_range("unknown dataset '" + name + "'"), name_(name) {}

  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

}  // namespace contra

#endif  // CONTRA_ERRORS_HPP_
