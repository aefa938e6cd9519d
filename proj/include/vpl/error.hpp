#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vpl {

enum class Errc {
  invalid_parameter,
  invalid_input,
  format_error,
  ill_posed,
  divergence,
  oracle_size,
  scan_error,
  insufficient_labels,
  no_unlabeled,
  layout_error,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace vpl
