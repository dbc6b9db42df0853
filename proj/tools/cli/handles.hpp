#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "cxosc/cxosc.h"

namespace cxosc_cli {

/// Failure carrying the process exit code.
class CliError : public std::runtime_error {
public:
    CliError(int code, const std::string& message) : std::runtime_error(message), code_(code) {}
    int code() const { return code_; }

private:
    int code_;
};

enum ExitCode : int {
    kExitOk = 0,
    kExitVerificationFailed = 1,
    kExitParameterDomain = 2,
    kExitResolution = 3,
    kExitUnsupported = 4,
};

int exit_code_for(int status);

/// Throws CliError when a C API call did not return CXOSC_OK.
void check(int status, const char* what);

template <class T, void (*Destroy)(T*)>
struct HandleDeleter {
    void operator()(T* ptr) const { Destroy(ptr); }
};

using Grid = std::unique_ptr<cxosc_grid, HandleDeleter<cxosc_grid, cxosc_grid_destroy>>;
using Basis = std::unique_ptr<cxosc_basis, HandleDeleter<cxosc_basis, cxosc_basis_destroy>>;
using Coeffs = std::unique_ptr<cxosc_coeffs, HandleDeleter<cxosc_coeffs, cxosc_coeffs_destroy>>;
using Frame = std::unique_ptr<cxosc_frame, HandleDeleter<cxosc_frame, cxosc_frame_destroy>>;
using Wigner = std::unique_ptr<cxosc_wigner, HandleDeleter<cxosc_wigner, cxosc_wigner_destroy>>;

} // namespace cxosc_cli
