#include "fairkit/error.hpp"

namespace fairkit {

const char* Error::kind() const noexcept {
    switch (code_) {
        case ExitCode::config: return "config";
        case ExitCode::data: return "data";
        case ExitCode::numeric: return "numeric";
        case ExitCode::ok: break;
    }
    return "unknown";
}

}  // namespace fairkit
