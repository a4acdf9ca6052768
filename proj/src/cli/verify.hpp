#pragma once

#include <iosfwd>
#include <string>

namespace madelung::cli {

struct VerifyOptions {
  double beta = 1.0;
  bool quick = false;
  std::string golden;
};

int run_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace madelung::cli
