#ifndef HVA_ERROR_HPP
#define HVA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hva {

/// Base of every error thrown by the library. `code()` is a short stable tag
/// used by the command-line front end ("error: <code>: <message>").
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// Malformed arguments: zero denominators, dimension mismatches, symbols
/// outside an alphabet, unparsable files.
class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& message) : Error("invalid-input", message) {}
};

class SingularMatrix : public Error {
public:
    explicit SingularMatrix(const std::string& message) : Error("singular-matrix", message) {}
};

/// A vector that is not the image of any string under a (generalized)
/// Stern-Brocot encoding.
class InvalidEncoding : public Error {
public:
    explicit InvalidEncoding(const std::string& message) : Error("invalid-encoding", message) {}
};

/// Nondeterministic blow-up past the configured budget; the answer is unknown.
class ResourceExceeded : public Error {
public:
    explicit ResourceExceeded(const std::string& message) : Error("resource", message) {}
};

/// Something that can only happen if the implementation itself is wrong.
class InternalError : public Error {
public:
    explicit InternalError(const std::string& message) : Error("internal", message) {}
};

}  // namespace hva

#endif  // HVA_ERROR_HPP
