#ifndef RETFIELDS_PARALLEL_HPP
#define RETFIELDS_PARALLEL_HPP

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace retfields {

int hardware_threads();

/// Worker count selection: the RETFIELDS_THREADS environment variable wins,
/// then `requested`; 0 means "use all hardware threads".
int resolve_threads(int requested);

/// Run body(i) for i in [0, n). Work is handed out in contiguous chunks via
/// an atomic cursor, so iterations must be independent; callers that care
/// about ordering should write into slot i and assemble afterwards. The
/// first exception a worker throws stops the loop and is rethrown here.
template <class F>
void parallel_for(long n, int threads, F&& body)
{
    if (n <= 0)
        return;
    if (threads > n)
        threads = static_cast<int>(n);
    if (threads <= 1) {
        for (long i = 0; i < n; ++i)
            body(i);
        return;
    }
    const long grain = std::max(1L, n / (8L * threads));
    std::atomic<long> cursor{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        try {
            while (!failed.load(std::memory_order_relaxed)) {
                const long begin = cursor.fetch_add(grain);
                if (begin >= n)
                    return;
                const long end = std::min(n, begin + grain);
                for (long i = begin; i < end; ++i)
                    body(i);
            }
        } catch (...) {
            const std::scoped_lock lock(error_mutex);
            if (!error)
                error = std::current_exception();
            failed.store(true, std::memory_order_relaxed);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads) - 1);
    for (int w = 1; w < threads; ++w)
        pool.emplace_back(run);
    run();
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace retfields

#endif
