#pragma once

#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "premsel/corpus/corpus.hpp"
#include "premsel/ranking.hpp"

namespace premsel::eval {

enum class ProofStatus { Proved, Failed, Timeout };

const char* status_name(ProofStatus status);

/// Attempts `conjecture` from exactly `premises`.
using Prover = std::function<ProofStatus(const std::string& conjecture, std::span<const std::string> premises)>;

/// 16, 32, ..., 1024.
std::vector<std::size_t> default_cutoffs();

/// Proved iff every positive is among the selected premises.
ProofStatus oracle_prove(std::span<const std::string> top_k, std::span<const std::string> positives);

/// oracle_prove against the recorded dependencies of each conjecture.
Prover oracle_prover(const corpus::Corpus& corpus);

struct Attempt {
  std::size_t cutoff = 0;
  ProofStatus status = ProofStatus::Failed;
};

struct ConjectureOutcome {
  std::string conjecture;
  std::optional<std::size_t> proved_at;
  std::vector<Attempt> attempts;
};

struct EvalReport {
  std::vector<std::size_t> cutoffs;
  /// Conjectures first proved at each cutoff.
  std::vector<std::size_t> proved_at;
  /// Conjectures proved with at most each cutoff; non-decreasing.
  std::vector<std::size_t> cumulative;
  std::size_t total = 0;
  std::vector<ConjectureOutcome> outcomes;

  /// Cumulative count for the largest listed cutoff <= k.
  std::size_t proved_within(std::size_t k) const;
  std::set<std::string> proved_set() const;
};

/// Tries each conjecture at increasing cutoffs until the first success. Once
/// a ranking is exhausted, larger cutoffs would repeat the same attempt and
/// are skipped. Timeouts count as failed attempts. `jobs` > 1 runs
/// conjectures on worker threads; results keep input order.
EvalReport cutoff_sweep(std::span<const RankingResult> rankings, const Prover& prover,
                        std::span<const std::size_t> cutoffs, std::size_t jobs = 1);
EvalReport cutoff_sweep(std::span<const RankingResult> rankings, const Prover& prover);

/// Plain-text table: `cutoff proved cumulative percent`.
std::string format_report(const EvalReport& report);
nlohmann::json report_json(const EvalReport& report);

}  // namespace premsel::eval
