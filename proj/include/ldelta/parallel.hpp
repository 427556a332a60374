// Copyright 2026 The ldelta Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LDELTA_PARALLEL_HPP_
#define LDELTA_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ldelta {

  inline unsigned default_threads() {
    return std::max(1U, std::thread::hardware_concurrency());
  }

  //! Calls `fn(index, worker)` for every index in [0, count), handing out
  //! indices dynamically to at most `threads` workers. The first exception
  //! thrown by any call is rethrown after all workers stop.
  template <typename Fn>
  void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    threads = std::max(1U, threads);
    if (threads == 1 || count <= 1) {
      for (std::size_t i = 0; i < count; ++i) {
        fn(i, 0U);
      }
      return;
    }
    auto workers = static_cast<unsigned>(
        std::min<std::size_t>(threads, count));
    std::atomic<std::size_t> next{0};
    std::atomic<bool>        failed{false};
    std::exception_ptr       error;
    std::mutex               error_mutex;
    {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (auto i = next.fetch_add(1); i < count && !failed.load();
                 i = next.fetch_add(1)) {
              fn(i, w);
            }
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) {
              error = std::current_exception();
            }
            failed = true;
          }
        });
      }
    }
    if (error) {
      std::rethrow_exception(error);
    }
  }

}  // namespace ldelta

#endif  // LDELTA_PARALLEL_HPP_
