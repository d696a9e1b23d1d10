// Copyright 2026 The padic-hh Authors
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

// padic-hh: command-line front end. Talks to the library only through the C
// interface in padic_hh.h.
//
// Exit codes: 0 all checks pass, 1 a check fails (or a requested quantity does
// not exist), 2 usage or parse error, 3 precision exhausted.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "padic_hh.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPrecision = 3;

// A failed library call, carried to main() as an exit code.
struct CallFailed {
  int exit_code;
};

int exit_code_for(phh_error_t code) {
  switch (code) {
    case PHH_OK: return kExitPass;
    case PHH_ERR_PARSE:
    case PHH_ERR_INVALID_ARGUMENT: return kExitUsage;
    case PHH_ERR_PRECISION_EXHAUSTED: return kExitPrecision;
    default: return kExitFail;
  }
}

void check(phh_error_t code) {
  if (code == PHH_OK) return;
  std::cerr << "padic-hh: " << phh_last_error_message() << "\n";
  throw CallFailed{exit_code_for(code)};
}

struct Freer {
  void operator()(char* s) const { phh_string_free(s); }
  void operator()(phh_function* f) const { phh_function_free(f); }
  void operator()(phh_kernel* k) const { phh_kernel_free(k); }
  void operator()(phh_report* r) const { phh_report_free(r); }
};
template <typename T>
using Owned = std::unique_ptr<T, Freer>;

std::string take(char* s) {
  Owned<char> owned(s);
  return owned.get();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "padic-hh: cannot read " << path << "\n";
    throw CallFailed{kExitUsage};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!(out << text)) {
    std::cerr << "padic-hh: cannot write " << path << "\n";
    throw CallFailed{kExitFail};
  }
}

Owned<phh_kernel> load_kernel(const std::string& spec) {
  phh_kernel* k = nullptr;
  check(phh_kernel_parse(spec.c_str(), &k));
  return Owned<phh_kernel>(k);
}

Owned<phh_function> load_function(const std::string& path, std::optional<long> prime) {
  phh_function* f = nullptr;
  check(phh_function_from_json(read_file(path).c_str(), &f));
  Owned<phh_function> fn(f);
  long p = 0;
  check(phh_function_prime(fn.get(), &p));
  if (prime && *prime != p) {
    std::cerr << "padic-hh: " << path << " is a function over Q_" << p << ", not Q_" << *prime << "\n";
    throw CallFailed{kExitUsage};
  }
  return fn;
}

int report_exit_code(const phh_report* report) {
  phh_summary s{};
  check(phh_report_summary(report, &s));
  if (s.fail > 0) return kExitFail;
  if (s.precision_exhausted > 0) return kExitPrecision;
  if (s.undecided > 0) return kExitFail;
  return kExitPass;
}

phh_format_t format_of(const std::string& name) {
  if (name == "csv") return PHH_FORMAT_CSV;
  if (name == "text") return PHH_FORMAT_TEXT;
  return PHH_FORMAT_JSON;
}

struct Options {
  long prime = 2;
  std::string r;
  std::string alpha;
  std::string kernel;
  std::string method;
  std::string tol;
  std::string input;
  std::string output;
  std::string space;
  std::string theorem;
  long shift = 1;
  std::string grid;
  std::string checks;
  std::string format = "text";
  std::optional<std::uint64_t> seed;
};

int run_constant(const Options& o) {
  Owned<phh_kernel> k = load_kernel(o.kernel);
  const char* tol = o.tol.empty() ? nullptr : o.tol.c_str();
  char* out = nullptr;
  phh_error_t code = PHH_OK;
  if (o.method.empty()) {
    // closed form when the kernel has one, certified series otherwise
    code = phh_constant(k.get(), o.prime, o.r.c_str(), o.alpha.c_str(), PHH_METHOD_CLOSED, tol, &out);
    if (code == PHH_ERR_NO_CLOSED_FORM) {
      code = phh_constant(k.get(), o.prime, o.r.c_str(), o.alpha.c_str(), PHH_METHOD_SERIES, tol, &out);
    }
  } else {
    const phh_method_t method = o.method == "series" ? PHH_METHOD_SERIES : PHH_METHOD_CLOSED;
    code = phh_constant(k.get(), o.prime, o.r.c_str(), o.alpha.c_str(), method, tol, &out);
  }
  check(code);
  const std::string json = take(out);
  std::cout << json << "\n";
  return json.find("\"admissible\": false") == std::string::npos ? kExitPass : kExitFail;
}

int run_apply(const Options& o) {
  Owned<phh_kernel> k = load_kernel(o.kernel);
  Owned<phh_function> f = load_function(o.input, std::nullopt);
  phh_function* image = nullptr;
  check(phh_apply(k.get(), f.get(), &image));
  Owned<phh_function> img(image);
  char* json = nullptr;
  check(phh_function_to_json(img.get(), &json));
  write_file(o.output, take(json) + "\n");
  return kExitPass;
}

int run_norm(const Options& o) {
  Owned<phh_function> f = load_function(o.input, o.prime);
  phh_space_t space = PHH_SPACE_LR;
  if (o.space == "morrey") space = PHH_SPACE_MORREY;
  if (o.space == "block-upper") space = PHH_SPACE_BLOCK_UPPER;
  if (o.space == "block-lower") space = PHH_SPACE_BLOCK_LOWER;
  char* out = nullptr;
  check(phh_norm(f.get(), space, o.r.c_str(), o.alpha.c_str(), &out));
  std::cout << take(out) << "\n";
  return kExitPass;
}

int emit(const phh_report* report, const std::string& format, const std::string& output) {
  char* text = nullptr;
  check(phh_report_emit(report, format_of(format), &text));
  const std::string body = take(text);
  if (output.empty()) {
    std::cout << body;
  } else {
    write_file(output, body);
  }
  return report_exit_code(report);
}

int run_verify(const Options& o) {
  Owned<phh_kernel> k = o.kernel.empty() ? nullptr : load_kernel(o.kernel);
  Owned<phh_function> f = o.input.empty() ? nullptr : load_function(o.input, o.prime);
  phh_report* report = nullptr;
  check(phh_verify(o.theorem.c_str(), o.prime, o.r.c_str(), o.alpha.c_str(), k.get(), f.get(), o.shift, &report));
  Owned<phh_report> owned(report);
  return emit(owned.get(), o.format, o.output);
}

int run_sweep(const Options& o) {
  const std::string grid = read_file(o.grid);
  phh_report* report = nullptr;
  const std::uint64_t* seed = o.seed ? &*o.seed : nullptr;
  check(phh_sweep(grid.c_str(), o.checks.c_str(), seed, &report));
  Owned<phh_report> owned(report);
  return emit(owned.get(), o.format, o.output);
}

void add_space_params(CLI::App* cmd, Options& o) {
  cmd->add_option("--prime", o.prime, "prime p")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--r", o.r, "Lebesgue exponent r > 1 as num/den")->required();
  cmd->add_option("--alpha", o.alpha, "Morrey/block index alpha > 0 as num/den")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified p-adic Hardy-Hilbert operators on radial functions"};
  app.set_version_flag("--version", std::string(phh_version()));
  app.require_subcommand(1);
  Options o;

  const std::string kernel_help = "kernel: hilbert | hardy | hlp | dp:<num/den>";
  auto* constant = app.add_subcommand("constant", "operator constant C_{r,alpha}");
  add_space_params(constant, o);
  constant->add_option("--kernel", o.kernel, kernel_help)->required();
  constant->add_option("--method", o.method, "closed | series (default: closed when available)")
      ->check(CLI::IsMember({"closed", "series"}));
  constant->add_option("--tol", o.tol, "relative truncation tolerance as num/den (default 1/10^12)");

  auto* apply = app.add_subcommand("apply", "apply an operator to a radial function");
  apply->add_option("--kernel", o.kernel, kernel_help)->required();
  apply->add_option("--input", o.input, "function JSON")->required()->check(CLI::ExistingFile);
  apply->add_option("--output", o.output, "where to write the image JSON")->required();

  auto* norm = app.add_subcommand("norm", "L^r, Morrey or block norm of a radial function");
  norm->add_option("--space", o.space, "lr | morrey | block-upper | block-lower")
      ->required()
      ->check(CLI::IsMember({"lr", "morrey", "block-upper", "block-lower"}));
  add_space_params(norm, o);
  norm->add_option("--input", o.input, "function JSON")->required()->check(CLI::ExistingFile);

  const auto formats = CLI::IsMember({"json", "csv", "text"});
  auto* verify = app.add_subcommand("verify", "check one theorem instance");
  verify->add_option("--theorem", o.theorem,
                     "Dilation31 | Transport32 | Hilbert33 | Hardy34 | Dp35 | HLPRemark | Holder23 | Minkowski24")
      ->required();
  add_space_params(verify, o);
  verify->add_option("--kernel", o.kernel, kernel_help);
  verify->add_option("--input", o.input, "function JSON (default: indicator of the unit ball)")
      ->check(CLI::ExistingFile);
  verify->add_option("--shift", o.shift, "dilation exponent t for Dilation31")->capture_default_str();
  verify->add_option("--format", o.format, "json | csv | text")->check(formats)->capture_default_str();
  verify->add_option("--output", o.output, "write the report here instead of stdout");

  auto* sweep = app.add_subcommand("sweep", "run checks over a parameter grid");
  sweep->add_option("--grid", o.grid, "grid JSON")->required()->check(CLI::ExistingFile);
  sweep->add_option("--checks", o.checks, "comma-separated theorem ids")->required();
  sweep->add_option("--format", o.format, "json | csv | text")->check(formats)->capture_default_str();
  sweep->add_option("--seed", o.seed, "override the grid's corpus seed");
  sweep->add_option("--output", o.output, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*constant) return run_constant(o);
    if (*apply) return run_apply(o);
    if (*norm) return run_norm(o);
    if (*verify) return run_verify(o);
    if (*sweep) return run_sweep(o);
  } catch (const CallFailed& failed) {
    return failed.exit_code;
  }
  return kExitUsage;
}
