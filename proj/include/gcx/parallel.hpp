#ifndef GCX_PARALLEL_HPP
#define GCX_PARALLEL_HPP

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace gcx {

// Worker count used by every parallel loop; 0 means hardware concurrency.
void set_num_threads(int n);
int num_threads();

// Runs body(i) for i in [0, count). Results must be written to slots indexed by i
// so the outcome does not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace gcx

#endif
