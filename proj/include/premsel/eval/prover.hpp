#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "premsel/corpus/corpus.hpp"
#include "premsel/eval/sweep.hpp"

namespace premsel::eval {

struct ProverLimits {
  double soft_cpu_seconds = 10;
  /// Wall-clock kill deadline, also passed to the prover as its CPU limit.
  double hard_seconds = 15;
  std::size_t memory_mb = 1024;
  std::size_t processed_clauses = 100000;
};

/// 90 s soft, 120 s hard, 4 GB, 500,000 processed clauses.
ProverLimits paper_limits();

/// Command-line flags for an E-family prover, before the problem path.
std::vector<std::string> e_prover_arguments(const ProverLimits& limits);

/// FOF problem: the premises as axioms, then the target as conjecture.
std::string problem_text(const corpus::Corpus& corpus, const std::string& conjecture,
                         std::span<const std::string> premises);

/// Maps the `SZS status` line of prover output: Theorem, Unsatisfiable and
/// ContradictoryAxioms prove; ResourceOut, Timeout and MemoryOut time out;
/// anything else fails. Throws MalformedProverOutput without a status line.
ProofStatus parse_szs_status(std::string_view output);

struct ProverRun {
  ProofStatus status = ProofStatus::Failed;
  std::vector<std::string> argv;
  std::string output;
};

/// Runs `command` with `arguments` plus the path of a problem file holding
/// `problem`, collecting stdout and stderr. A run still going at the hard
/// limit is killed and reported as a timeout. Throws ProverNotFound.
ProverRun run_prover(const std::filesystem::path& command, const std::vector<std::string>& arguments,
                     const std::string& problem, double hard_seconds, const std::filesystem::path& work_dir);

/// Prover callback that writes problems under `work_dir` and invokes
/// `command` with e_prover_arguments(limits).
Prover external_prover(const corpus::Corpus& corpus, std::filesystem::path command, ProverLimits limits,
                       std::filesystem::path work_dir);

/// Resolves a bare command name against PATH. Throws ProverNotFound.
std::filesystem::path resolve_command(const std::string& command);

}  // namespace premsel::eval
