#include "yoro/dimacs.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "yoro/error.hpp"

namespace yoro {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    auto end = nl == std::string_view::npos ? text.size() : nl;
    auto line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_int(std::string_view tok, T& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

[[noreturn]] void fail(std::string_view what, std::size_t line_no, std::string_view line) {
  std::ostringstream msg;
  msg << what << " at line " << line_no << ": \"" << line << "\"";
  throw FormatError(msg.str());
}

// Temporary file removed on scope exit.
class TempFile {
 public:
  explicit TempFile(std::string_view stem) {
    auto pattern = (std::filesystem::temp_directory_path() / (std::string(stem) + "-XXXXXX")).string();
    std::vector<char> buf(pattern.begin(), pattern.end());
    buf.push_back('\0');
    int fd = ::mkstemp(buf.data());
    if (fd < 0) throw AdapterError(std::string("cannot create temporary file: ") + std::strerror(errno));
    ::close(fd);
    path_ = buf.data();
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

}  // namespace

std::string write_dimacs(const CnfFormula& formula, const std::vector<std::string>& comments) {
  std::string out;
  for (const auto& c : comments) {
    out += "c ";
    out += c;
    out.push_back('\n');
  }
  out += "p cnf " + std::to_string(formula.num_vars) + " " + std::to_string(formula.clauses.size()) + "\n";
  for (const auto& clause : formula.clauses) {
    for (Literal lit : clause) {
      out += std::to_string(lit);
      out.push_back(' ');
    }
    out += "0\n";
  }
  return out;
}

CnfFormula read_dimacs(std::string_view text) {
  CnfFormula f;
  bool have_header = false;
  std::size_t declared = 0;
  Clause current;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = lines[i];
    const auto toks = split_ws(line);
    if (toks.empty() || toks[0].front() == 'c') continue;
    if (toks[0] == "%") break;
    if (toks[0] == "p") {
      if (have_header) fail("duplicate problem line", i + 1, line);
      if (toks.size() != 4 || toks[1] != "cnf" || !parse_int(toks[2], f.num_vars) || !parse_int(toks[3], declared) ||
          f.num_vars < 0)
        fail("malformed problem line", i + 1, line);
      have_header = true;
      continue;
    }
    if (!have_header) fail("clause before problem line", i + 1, line);
    for (auto tok : toks) {
      Literal lit = 0;
      if (!parse_int(tok, lit)) fail("bad literal", i + 1, line);
      if (lit == 0) {
        f.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (var_of(lit) > f.num_vars) fail("literal exceeds declared variable count", i + 1, line);
      current.push_back(lit);
    }
  }
  if (!have_header) throw FormatError("dimacs: missing problem line");
  if (!current.empty()) throw FormatError("dimacs: last clause is not terminated by 0");
  if (f.clauses.size() != declared) {
    std::ostringstream msg;
    msg << "dimacs: header declares " << declared << " clauses, found " << f.clauses.size();
    throw FormatError(msg.str());
  }
  return f;
}

SolverAnswer read_model(std::string_view solver_output) {
  enum class Status { None, Sat, Unsat } status = Status::None;
  std::vector<Literal> model;
  bool terminated = false;
  const auto lines = split_lines(solver_output);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = lines[i];
    const auto toks = split_ws(line);
    if (toks.empty() || toks[0] == "c") continue;
    if (toks[0] == "s") {
      if (status != Status::None) fail("duplicate status line", i + 1, line);
      if (toks.size() == 2 && toks[1] == "SATISFIABLE")
        status = Status::Sat;
      else if (toks.size() == 2 && toks[1] == "UNSATISFIABLE")
        status = Status::Unsat;
      else
        fail("unrecognized status", i + 1, line);
      continue;
    }
    if (toks[0] == "v") {
      if (terminated) fail("value line after terminating 0", i + 1, line);
      for (std::size_t k = 1; k < toks.size(); ++k) {
        Literal lit = 0;
        if (!parse_int(toks[k], lit)) fail("bad literal", i + 1, line);
        if (lit == 0) {
          terminated = true;
          if (k + 1 != toks.size()) fail("literals after terminating 0", i + 1, line);
          break;
        }
        model.push_back(lit);
      }
      continue;
    }
    fail("unexpected solver output", i + 1, line);
  }
  if (status == Status::Unsat) {
    if (!model.empty()) throw FormatError("solver output: UNSATISFIABLE with a model");
    return UnsatAnswer{};
  }
  if (status == Status::None) throw FormatError("solver output: missing status line");
  if (!terminated) throw FormatError("solver output: model is not terminated by 0");
  return model;
}

SolveReport run_external(const CnfFormula& formula, const ExternalSolverOptions& options) {
  const std::string placeholder = "{cnf}";
  if (options.command_template.find(placeholder) == std::string::npos)
    throw InvalidArgument("run_external: command template has no {cnf} placeholder");

  TempFile cnf("yoro-cnf");
  TempFile out("yoro-out");
  {
    std::ofstream os(cnf.path(), std::ios::binary);
    os << write_dimacs(formula);
    if (!os) throw AdapterError("run_external: cannot write " + cnf.path());
  }
  std::string command;
  for (std::size_t pos = 0;;) {
    auto hit = options.command_template.find(placeholder, pos);
    command.append(options.command_template, pos, hit == std::string::npos ? std::string::npos : hit - pos);
    if (hit == std::string::npos) break;
    command += shell_quote(cnf.path());
    pos = hit + placeholder.size();
  }

  const auto start = std::chrono::steady_clock::now();
  pid_t pid = ::fork();
  if (pid < 0) throw AdapterError(std::string("run_external: fork failed: ") + std::strerror(errno));
  if (pid == 0) {
    ::setpgid(0, 0);
    int fd = ::open(out.path().c_str(), O_WRONLY | O_TRUNC);
    if (fd < 0) ::_exit(127);
    ::dup2(fd, STDOUT_FILENO);
    ::close(fd);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }

  int wstatus = 0;
  bool timed_out = false;
  for (;;) {
    pid_t r = ::waitpid(pid, &wstatus, WNOHANG);
    if (r == pid) break;
    if (r < 0 && errno != EINTR) throw AdapterError(std::string("run_external: waitpid failed: ") + std::strerror(errno));
    if (options.timeout && std::chrono::steady_clock::now() - start > *options.timeout) {
      ::kill(-pid, SIGKILL);
      ::kill(pid, SIGKILL);
      ::waitpid(pid, &wstatus, 0);
      timed_out = true;
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }

  SolveReport report;
  report.stats.elapsed = std::chrono::steady_clock::now() - start;
  if (timed_out) {
    report.status = SolveStatus::LimitExceeded;
    return report;
  }

  std::string output;
  {
    std::ifstream is(out.path(), std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    output = ss.str();
  }
  const int exit_code = WIFEXITED(wstatus) ? WEXITSTATUS(wstatus) : -1;

  SolverAnswer answer;
  try {
    answer = read_model(output);
  } catch (const FormatError& e) {
    std::ostringstream msg;
    msg << "run_external: solver exited with status " << exit_code << " and unparseable output (" << e.what()
        << ")";
    throw AdapterError(msg.str());
  }

  if (std::holds_alternative<UnsatAnswer>(answer)) {
    report.status = SolveStatus::Unsat;
    return report;
  }
  const auto& lits = std::get<std::vector<Literal>>(answer);
  std::vector<Literal> model(static_cast<std::size_t>(formula.num_vars));
  for (int v = 1; v <= formula.num_vars; ++v) model[static_cast<std::size_t>(v - 1)] = -v;
  for (Literal lit : lits) {
    if (var_of(lit) > formula.num_vars) throw AdapterError("run_external: model mentions unknown variable");
    model[static_cast<std::size_t>(var_of(lit) - 1)] = lit;
  }
  for (const auto& clause : formula.clauses) {
    bool sat = false;
    for (Literal lit : clause)
      if (model[static_cast<std::size_t>(var_of(lit) - 1)] == lit) {
        sat = true;
        break;
      }
    if (!sat) throw AdapterError("run_external: solver model does not satisfy the formula");
  }
  report.status = SolveStatus::Sat;
  report.model = std::move(model);
  return report;
}

}  // namespace yoro
