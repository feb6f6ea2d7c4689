#pragma once

#include <atomic>
#include <condition_variable>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace coin {

// Minimal persistent pool for index-based parallel loops. Work is handed out
// as task indices through a shared counter, so results never depend on which
// thread ran which index; callers who need a fixed combination order key
// their buffers by task index.
class ThreadPool {
 public:
  explicit ThreadPool(int threads) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    thread_count_ = threads;
    for (int i = 0; i < threads - 1; ++i) {
      workers_.emplace_back([this] { worker_loop(); });
    }
  }

  ~ThreadPool() {
    {
      std::lock_guard lock(mutex_);
      stop_ = true;
      ++generation_;
    }
    cv_.notify_all();
    for (auto& w : workers_) w.join();
  }

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  int thread_count() const { return thread_count_; }

  // Runs fn(0..task_count-1), blocking until every task finished. The calling
  // thread participates. Rethrows the first task exception.
  void run(std::size_t task_count, const std::function<void(std::size_t)>& fn) {
    if (task_count == 0) return;
    if (thread_count_ == 1 || task_count == 1) {
      for (std::size_t i = 0; i < task_count; ++i) fn(i);
      return;
    }

    {
      std::lock_guard lock(mutex_);
      fn_ = &fn;
      task_count_ = task_count;
      next_task_.store(0, std::memory_order_relaxed);
      done_count_.store(0, std::memory_order_relaxed);
      error_ = nullptr;
      ++generation_;
    }
    cv_.notify_all();

    drain();

    std::unique_lock lock(mutex_);
    done_cv_.wait(lock, [this] { return done_count_.load() >= task_count_; });
    fn_ = nullptr;
    if (error_) std::rethrow_exception(error_);
  }

 private:
  void drain() {
    while (true) {
      const std::size_t i = next_task_.fetch_add(1, std::memory_order_relaxed);
      if (i >= task_count_) break;
      try {
        (*fn_)(i);
      } catch (...) {
        std::lock_guard lock(mutex_);
        if (!error_) error_ = std::current_exception();
      }
      if (done_count_.fetch_add(1) + 1 == task_count_) {
        done_cv_.notify_all();
      }
    }
  }

  void worker_loop() {
    std::uint64_t seen = 0;
    while (true) {
      {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, [&] { return stop_ || generation_ != seen; });
        if (stop_) return;
        seen = generation_;
        if (!fn_) continue;
      }
      drain();
    }
  }

  std::vector<std::thread> workers_;
  int thread_count_ = 1;

  std::mutex mutex_;
  std::condition_variable cv_;
  std::condition_variable done_cv_;
  std::uint64_t generation_ = 0;
  bool stop_ = false;

  const std::function<void(std::size_t)>* fn_ = nullptr;
  std::size_t task_count_ = 0;
  std::atomic<std::size_t> next_task_{0};
  std::atomic<std::size_t> done_count_{0};
  std::exception_ptr error_;
};

}  // namespace coin
