#include "gcx/parallel.hpp"

#include <exception>
#include <mutex>

namespace gcx {

namespace {
std::atomic<int> g_threads{0};
}

void set_num_threads(int n) { g_threads = n < 0 ? 0 : n; }

int num_threads() {
    int n = g_threads.load();
    if (n > 0) return n;
    unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : static_cast<int>(h);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    int workers = num_threads();
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    if (static_cast<std::size_t>(workers) > count) workers = static_cast<int>(count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_lock;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_lock);
                    if (!error) error = std::current_exception();
                    next = count;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace gcx
