#ifndef TAUM_THREADS_HPP
#define TAUM_THREADS_HPP

#include <thread>

namespace taum::detail {

// 0 = use all available hardware threads.
inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

}  // namespace taum::detail

#endif  // TAUM_THREADS_HPP
