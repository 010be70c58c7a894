#include "retfields/parallel.hpp"

#include <cstdlib>
#include <string>

namespace retfields {

int hardware_threads()
{
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

int resolve_threads(int requested)
{
    if (const char* env = std::getenv("RETFIELDS_THREADS")) {
        try {
            requested = std::stoi(env);
        } catch (...) {
            requested = 0; // unparsable override falls back to auto
        }
    }
    if (requested <= 0)
        return hardware_threads();
    return requested;
}

} // namespace retfields
