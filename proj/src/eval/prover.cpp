#include "premsel/eval/prover.hpp"

#include <atomic>
#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <cstring>
#include <sstream>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include "premsel/error.hpp"
#include "premsel/fol/statement.hpp"

namespace premsel::eval {

ProverLimits paper_limits() { return {90, 120, 4096, 500000}; }

std::vector<std::string> e_prover_arguments(const ProverLimits& limits) {
  const auto secs = [](double s) { return std::to_string(static_cast<long long>(s + 0.5)); };
  return {
      "--auto",
      "--tstp-format",
      "-s",
      "--soft-cpu-limit=" + secs(limits.soft_cpu_seconds),
      "--cpu-limit=" + secs(limits.hard_seconds),
      "--memory-limit=" + std::to_string(limits.memory_mb),
      "--processed-clauses-limit=" + std::to_string(limits.processed_clauses),
  };
}

std::string problem_text(const corpus::Corpus& corpus, const std::string& conjecture,
                         std::span<const std::string> premises) {
  std::string out = "% premises for " + conjecture + "\n";
  for (const auto& p : premises) {
    out += fol::print_entry(p, fol::Role::Axiom, corpus.at(p).formula);
    out += '\n';
  }
  out += fol::print_entry(conjecture, fol::Role::Conjecture, corpus.at(conjecture).formula);
  out += '\n';
  return out;
}

ProofStatus parse_szs_status(std::string_view output) {
  constexpr std::string_view marker = "SZS status ";
  const auto at = output.find(marker);
  if (at == std::string_view::npos) {
    throw DataError("MalformedProverOutput", "no 'SZS status' line in prover output");
  }
  std::string_view rest = output.substr(at + marker.size());
  const auto end = rest.find_first_of(" \t\r\n");
  const std::string_view status = rest.substr(0, end);
  if (status == "Theorem" || status == "Unsatisfiable" || status == "ContradictoryAxioms") return ProofStatus::Proved;
  if (status == "ResourceOut" || status == "Timeout" || status == "MemoryOut") return ProofStatus::Timeout;
  return ProofStatus::Failed;
}

std::filesystem::path resolve_command(const std::string& command) {
  const auto usable = [](const std::filesystem::path& p) {
    return std::filesystem::is_regular_file(p) && ::access(p.c_str(), X_OK) == 0;
  };
  if (command.find('/') != std::string::npos) {
    if (usable(command)) return command;
    throw DataError("ProverNotFound", "'" + command + "' is not an executable file");
  }
  const char* path = std::getenv("PATH");
  std::stringstream dirs(path ? path : "");
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    if (dir.empty()) continue;
    const auto candidate = std::filesystem::path(dir) / command;
    if (usable(candidate)) return candidate;
  }
  throw DataError("ProverNotFound", "'" + command + "' not found on PATH");
}

ProverRun run_prover(const std::filesystem::path& command, const std::vector<std::string>& arguments,
                     const std::string& problem, double hard_seconds, const std::filesystem::path& work_dir) {
  static std::atomic<unsigned> counter{0};
  const std::filesystem::path exe = resolve_command(command.string());
  std::filesystem::create_directories(work_dir);
  const auto problem_path =
      work_dir / ("problem_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".p");
  corpus::write_text_file(problem_path, problem);

  ProverRun run;
  run.argv.push_back(exe.string());
  run.argv.insert(run.argv.end(), arguments.begin(), arguments.end());
  run.argv.push_back(problem_path.string());

  int fds[2];
  if (::pipe(fds) != 0) throw ComputeError("ProverError", std::string("pipe: ") + std::strerror(errno));
  std::vector<char*> cargv;
  for (auto& a : run.argv) cargv.push_back(a.data());
  cargv.push_back(nullptr);

  const pid_t pid = ::fork();
  if (pid < 0) throw ComputeError("ProverError", std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(fds[1], STDOUT_FILENO);
    ::dup2(fds[1], STDERR_FILENO);
    ::close(fds[0]);
    ::close(fds[1]);
    ::execv(cargv[0], cargv.data());
    _exit(127);
  }
  ::close(fds[1]);

  const auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(hard_seconds);
  bool killed = false;
  char buf[4096];
  for (;;) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      ::kill(-pid, SIGKILL);
      ::kill(pid, SIGKILL);
      killed = true;
      break;
    }
    pollfd p{fds[0], POLLIN, 0};
    const int ready = ::poll(&p, 1, static_cast<int>(std::min<long long>(left.count(), 1000)));
    if (ready < 0 && errno == EINTR) continue;
    if (ready <= 0) continue;
    const ssize_t n = ::read(fds[0], buf, sizeof buf);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    run.output.append(buf, static_cast<std::size_t>(n));
  }
  ::close(fds[0]);
  int wstatus = 0;
  while (::waitpid(pid, &wstatus, 0) < 0 && errno == EINTR) {
  }
  std::error_code ec;
  std::filesystem::remove(problem_path, ec);

  if (killed) {
    run.status = ProofStatus::Timeout;
    return run;
  }
  if (WIFEXITED(wstatus) && WEXITSTATUS(wstatus) == 127 && run.output.empty()) {
    throw DataError("ProverNotFound", "could not execute '" + exe.string() + "'");
  }
  run.status = parse_szs_status(run.output);
  return run;
}

Prover external_prover(const corpus::Corpus& corpus, std::filesystem::path command, ProverLimits limits,
                       std::filesystem::path work_dir) {
  resolve_command(command.string());
  return [&corpus, command = std::move(command), limits, work_dir = std::move(work_dir)](
             const std::string& conjecture, std::span<const std::string> premises) {
    return run_prover(command, e_prover_arguments(limits), problem_text(corpus, conjecture, premises),
                      limits.hard_seconds, work_dir)
        .status;
  };
}

}  // namespace premsel::eval
