#pragma once

#include <stdexcept>
#include <string>

namespace stefan_front {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A reaction term failed one of its sign/zero conditions.
class ValidationError : public Error {
public:
    ValidationError(const std::string& condition, double u)
        : Error("validation failed: " + condition + " at u=" + std::to_string(u)),
          condition_(condition), point_(u) {}

    const std::string& condition() const noexcept { return condition_; }
    double point() const noexcept { return point_; }

private:
    std::string condition_;
    double point_;
};

class DomainError : public Error { using Error::Error; };
class QuadError : public Error { using Error::Error; };
class KindError : public Error { using Error::Error; };
class NoSolution : public Error { using Error::Error; };
class NoTermination : public Error { using Error::Error; };
class DegenerateError : public Error { using Error::Error; };
class SignError : public Error { using Error::Error; };
class BlowupError : public Error { using Error::Error; };
class MonotoneViolation : public Error { using Error::Error; };
class BudgetExhausted : public Error { using Error::Error; };
class NotSpreading : public Error { using Error::Error; };

/// Configuration error; `where` names the offending key or line.
class ParseError : public Error {
public:
    ParseError(const std::string& where, const std::string& what)
        : Error(where + ": " + what), where_(where) {}

    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

}  // namespace stefan_front
