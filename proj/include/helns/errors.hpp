#pragma once

#include <stdexcept>
#include <string>

namespace helns {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridMismatch : Error {
    GridMismatch() : Error("fields live on different grids") {}
};

struct ZeroWavevector : Error {
    ZeroWavevector() : Error("helical basis is undefined at k = 0") {}
};

struct NotDivergenceFree : Error {
    explicit NotDivergenceFree(const std::string& what) : Error(what) {}
};

struct NegativePowerOnMeanMode : Error {
    NegativePowerOnMeanMode()
        : Error("negative Laplacian power applied to a field with a nonzero mean mode") {}
};

struct EmptyShellRange : Error {
    explicit EmptyShellRange(const std::string& what) : Error(what) {}
};

struct CflViolation : Error {
    explicit CflViolation(const std::string& what) : Error(what) {}
};

// Discrete blow-up: the state stopped being finite. Carries the last time
// at which it still was.
struct NonFinite : Error {
    double last_valid_time;
    explicit NonFinite(double t)
        : Error("state became non-finite after t = " + std::to_string(t)),
          last_valid_time(t) {}
};

struct InsufficientRecords : Error {
    InsufficientRecords() : Error("need at least two diagnostics records") {}
};

struct MissingProbeConstant : Error {
    MissingProbeConstant() : Error("envelope requires a probed constant (c1_hat)") {}
};

struct InvalidC5 : Error {
    explicit InvalidC5(const std::string& what) : Error(what) {}
};

struct BadMagic : Error {
    BadMagic() : Error("snapshot file does not start with the HELNSV01 magic") {}
};

struct SizeMismatch : Error {
    explicit SizeMismatch(const std::string& what) : Error(what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace helns
