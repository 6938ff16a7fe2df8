#ifndef SAC_ERRORS_HPP
#define SAC_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace sac {

/// A single-axis rotation too close to zero for the closed-form focal
/// estimators (the normalizing matrix entry vanishes).
class DegenerateRotationError : public std::domain_error {
 public:
  DegenerateRotationError(double angle_deg, const std::string& what)
      : std::domain_error(what), angle_deg_(angle_deg) {}

  double angle_deg() const { return angle_deg_; }

 private:
  double angle_deg_;
};

/// A homogeneous image point whose scale component is (numerically) zero.
class PointAtInfinityError : public std::domain_error {
 public:
  explicit PointAtInfinityError(const std::string& what)
      : std::domain_error(what) {}
};

/// Malformed input file. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string file, long line, const std::string& what)
      : std::runtime_error(line > 0
                               ? file + ":" + std::to_string(line) + ": " + what
                               : file + ": " + what),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const { return file_; }
  long line() const { return line_; }

 private:
  std::string file_;
  long line_;
};

/// Config validation failure; collects every problem found, not just the first.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> problems)
      : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

  const std::vector<std::string>& problems() const { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& ps) {
    std::string out;
    for (const auto& p : ps) {
      if (!out.empty()) out += "\n";
      out += p;
    }
    return out;
  }

  std::vector<std::string> problems_;
};

}  // namespace sac

#endif  // SAC_ERRORS_HPP
