#include "cgo/parallel.hpp"

#include <cstdlib>
#include <string>

namespace cgo {

std::size_t resolve_jobs(std::size_t requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CGO_JOBS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (...) {
        }
    }
    return 1;
}

}  // namespace cgo
