#pragma once

#include <string_view>

namespace contax {

void log_warning(std::string_view msg);
void log_info(std::string_view msg);

// Silences warnings (tests that exercise warn-don't-fail paths use this).
void set_quiet(bool quiet);
bool verbose();
void set_verbose(bool v);

}  // namespace contax
