#include "popcast/error.hpp"

namespace popcast {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::parse: return "parse error";
        case ErrorKind::structural: return "structural error";
        case ErrorKind::domain: return "domain error";
        case ErrorKind::range: return "range error";
        case ErrorKind::insufficient_data: return "insufficient data";
        case ErrorKind::io: return "i/o error";
    }
    return "error";
}

int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::range:
        case ErrorKind::insufficient_data: return 2;
        default: return 1;
    }
}

}  // namespace popcast
