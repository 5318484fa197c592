#pragma once

#include <stdexcept>
#include <string>

namespace spaceform {

// Every failure the library reports derives from Error. `kind()` is a stable
// machine-readable tag; the CLI forwards it in its JSON error records.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error("dimension_mismatch", what) {}
};

class InvalidPoint : public Error {
public:
    explicit InvalidPoint(const std::string& what) : Error("invalid_point", what) {}
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error("invalid_argument", what) {}
};

class SpaceMismatch : public Error {
public:
    explicit SpaceMismatch(const std::string& what) : Error("space_mismatch", what) {}
};

// A finite group whose word closure did not stabilize before the cutoff.
class NotClosed : public Error {
public:
    explicit NotClosed(const std::string& what) : Error("not_closed_at_cutoff", what) {}
};

// An infinite group whose enumerated window cannot certify a result.
class WindowInsufficient : public Error {
public:
    explicit WindowInsufficient(const std::string& what) : Error("window_insufficient", what) {}
};

class InfiniteVolume : public Error {
public:
    explicit InfiniteVolume(const std::string& what) : Error("infinite_volume", what) {}
};

class DegenerateGeometry : public Error {
public:
    explicit DegenerateGeometry(const std::string& what) : Error("degenerate", what) {}
};

class Unsupported : public Error {
public:
    explicit Unsupported(const std::string& what) : Error("unsupported", what) {}
};

} // namespace spaceform
