#pragma once

#include <coroutine>
#include <exception>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace edgeconn {

// Lazily started coroutine that can await other tasks and give control back
// to whoever resumes it with `co_await yield_now{}`. Resuming a task always
// resumes its innermost running subtask.
template <class T>
class Task;

struct yield_now {};

namespace detail {

struct PromiseBase {
  std::coroutine_handle<> continuation;
  std::coroutine_handle<>* leaf = nullptr;
  std::coroutine_handle<> own_leaf;
  std::exception_ptr error;

  std::suspend_always initial_suspend() noexcept { return {}; }
  std::suspend_always await_transform(yield_now) noexcept { return {}; }
  template <class A>
  A&& await_transform(A&& a) noexcept {
    return std::forward<A>(a);
  }
  void unhandled_exception() { error = std::current_exception(); }

  struct FinalAwaiter {
    bool await_ready() noexcept { return false; }
    template <class P>
    std::coroutine_handle<> await_suspend(std::coroutine_handle<P> h) noexcept {
      PromiseBase& p = h.promise();
      if (p.continuation) {
        *p.leaf = p.continuation;
        return p.continuation;
      }
      return std::noop_coroutine();
    }
    void await_resume() noexcept {}
  };
  FinalAwaiter final_suspend() noexcept { return {}; }
};

}  // namespace detail

template <class T>
class Task {
 public:
  struct promise_type : detail::PromiseBase {
    std::optional<T> value;
    Task get_return_object() { return Task(std::coroutine_handle<promise_type>::from_promise(*this)); }
    void return_value(T v) { value = std::move(v); }
  };

  Task() = default;
  Task(Task&& o) noexcept : h_(std::exchange(o.h_, {})) {}
  Task& operator=(Task&& o) noexcept {
    if (this != &o) {
      if (h_) h_.destroy();
      h_ = std::exchange(o.h_, {});
    }
    return *this;
  }
  Task(const Task&) = delete;
  Task& operator=(const Task&) = delete;
  ~Task() {
    if (h_) h_.destroy();
  }

  bool done() const { return !h_ || h_.done(); }

  // Runs until the next yield or completion; true once complete.
  bool step() {
    auto& p = h_.promise();
    if (!p.leaf) {
      p.leaf = &p.own_leaf;
      p.own_leaf = h_;
    }
    if (!h_.done()) p.leaf->resume();
    return h_.done();
  }

  T result() {
    auto& p = h_.promise();
    if (p.error) std::rethrow_exception(p.error);
    return std::move(*p.value);
  }

  T run() {
    while (!step()) {
    }
    return result();
  }

  struct Awaiter {
    std::coroutine_handle<promise_type> child;
    bool await_ready() noexcept { return false; }
    template <class P>
    std::coroutine_handle<> await_suspend(std::coroutine_handle<P> parent) noexcept {
      detail::PromiseBase& pp = parent.promise();
      auto& cp = child.promise();
      cp.continuation = parent;
      cp.leaf = pp.leaf;
      *cp.leaf = child;
      return child;
    }
    T await_resume() {
      auto& cp = child.promise();
      if (cp.error) std::rethrow_exception(cp.error);
      return std::move(*cp.value);
    }
  };
  Awaiter operator co_await() && noexcept { return Awaiter{h_}; }

 private:
  explicit Task(std::coroutine_handle<promise_type> h) : h_(h) {}
  std::coroutine_handle<promise_type> h_;
};

// Round-robin over the tasks, one slice each per turn, in index order. Stops
// as soon as a finished task satisfies `wins` and returns its index; returns
// nullopt when all tasks finished without a winner. Results of finished tasks
// stay available through Task::result.
template <class T>
std::optional<std::size_t> run_interleaved(std::vector<Task<T>>& tasks, const std::function<bool(const T&)>& wins,
                                           std::vector<std::optional<T>>& results) {
  results.assign(tasks.size(), std::nullopt);
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < tasks.size(); ++i) live.push_back(i);
  while (!live.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : live) {
      if (tasks[i].step()) {
        results[i] = tasks[i].result();
        if (wins(*results[i])) return i;
      } else {
        next.push_back(i);
      }
    }
    live = std::move(next);
  }
  return std::nullopt;
}

}  // namespace edgeconn
