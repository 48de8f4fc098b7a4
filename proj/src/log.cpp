#include "contax/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace contax {
namespace {
std::atomic<bool> g_quiet{false};
std::atomic<bool> g_verbose{false};
std::mutex g_mu;
}  // namespace

void log_warning(std::string_view msg) {
  if (g_quiet.load()) return;
  std::lock_guard<std::mutex> lock(g_mu);
  std::cerr << "warning: " << msg << '\n';
}

void log_info(std::string_view msg) {
  if (!g_verbose.load()) return;
  std::lock_guard<std::mutex> lock(g_mu);
  std::cerr << msg << '\n';
}

void set_quiet(bool quiet) { g_quiet.store(quiet); }
bool verbose() { return g_verbose.load(); }
void set_verbose(bool v) { g_verbose.store(v); }

}  // namespace contax
