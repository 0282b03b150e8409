// SPDX-License-Identifier: Apache-2.0
#include "hpsr/parallel.hpp"

#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hpsr {

int thread_count()
{
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1)
    hw = 1;
  const char* env = std::getenv("HPSR_THREADS");
  if (env != nullptr) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v < hw)
      hw = static_cast<int>(v);
  }
  return hw;
}

void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& fn)
{
  if (n == 0)
    return;
  std::size_t workers = static_cast<std::size_t>(thread_count());
  if (workers > n)
    workers = n;
  if (workers == 1) {
    fn(0, n);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto run = [&](std::size_t begin, std::size_t end) {
    try {
      fn(begin, end);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error)
        first_error = std::current_exception();
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; w++)
    threads.emplace_back(run, n * w / workers, n * (w + 1) / workers);
  run(0, n / workers);
  for (std::thread& t : threads)
    t.join();
  if (first_error)
    std::rethrow_exception(first_error);
}

}  // namespace hpsr
