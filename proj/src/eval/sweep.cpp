#include "premsel/eval/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <thread>
#include <unordered_set>

#include "premsel/error.hpp"

namespace premsel::eval {

const char* status_name(ProofStatus status) {
  switch (status) {
    case ProofStatus::Proved:
      return "proved";
    case ProofStatus::Failed:
      return "failed";
    case ProofStatus::Timeout:
      return "timeout";
  }
  return "?";
}

std::vector<std::size_t> default_cutoffs() {
  std::vector<std::size_t> out;
  for (std::size_t k = 16; k <= 1024; k *= 2) out.push_back(k);
  return out;
}

ProofStatus oracle_prove(std::span<const std::string> top_k, std::span<const std::string> positives) {
  const std::unordered_set<std::string_view> selected(top_k.begin(), top_k.end());
  for (const auto& p : positives) {
    if (!selected.count(p)) return ProofStatus::Failed;
  }
  return ProofStatus::Proved;
}

Prover oracle_prover(const corpus::Corpus& corpus) {
  return [&corpus](const std::string& conjecture, std::span<const std::string> premises) {
    std::vector<std::string> positives;
    for (const auto p : corpus.positives(corpus.id_of(conjecture))) positives.push_back(corpus[p].name);
    return oracle_prove(premises, positives);
  };
}

std::size_t EvalReport::proved_within(std::size_t k) const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (cutoffs[i] <= k) n = cumulative[i];
  }
  return n;
}

std::set<std::string> EvalReport::proved_set() const {
  std::set<std::string> out;
  for (const auto& o : outcomes) {
    if (o.proved_at) out.insert(o.conjecture);
  }
  return out;
}

namespace {

ConjectureOutcome sweep_one(const RankingResult& r, const Prover& prover, std::span<const std::size_t> cutoffs) {
  ConjectureOutcome out;
  out.conjecture = r.conjecture;
  std::size_t previous = 0;
  for (const std::size_t k : cutoffs) {
    const std::size_t take = std::min(k, r.premises.size());
    if (!out.attempts.empty() && take == previous) continue;
    previous = take;
    std::vector<std::string> top;
    top.reserve(take);
    for (std::size_t i = 0; i < take; ++i) top.push_back(r.premises[i].first);
    const ProofStatus status = prover(r.conjecture, top);
    out.attempts.push_back({k, status});
    if (status == ProofStatus::Proved) {
      out.proved_at = k;
      break;
    }
  }
  return out;
}

}  // namespace

EvalReport cutoff_sweep(std::span<const RankingResult> rankings, const Prover& prover,
                        std::span<const std::size_t> cutoffs, std::size_t jobs) {
  if (cutoffs.empty() || !std::is_sorted(cutoffs.begin(), cutoffs.end())) {
    throw UsageError("cutoffs must be a non-empty ascending list");
  }
  EvalReport report;
  report.cutoffs.assign(cutoffs.begin(), cutoffs.end());
  report.total = rankings.size();
  report.outcomes.resize(rankings.size());

  jobs = std::max<std::size_t>(1, std::min(jobs, rankings.size()));
  if (jobs == 1) {
    for (std::size_t i = 0; i < rankings.size(); ++i) report.outcomes[i] = sweep_one(rankings[i], prover, cutoffs);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < rankings.size(); i = next++) {
            report.outcomes[i] = sweep_one(rankings[i], prover, cutoffs);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : workers) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  report.proved_at.assign(cutoffs.size(), 0);
  for (const auto& o : report.outcomes) {
    if (!o.proved_at) continue;
    const auto it = std::find(cutoffs.begin(), cutoffs.end(), *o.proved_at);
    ++report.proved_at[static_cast<std::size_t>(it - cutoffs.begin())];
  }
  report.cumulative.resize(cutoffs.size());
  std::size_t running = 0;
  for (std::size_t i = 0; i < cutoffs.size(); ++i) report.cumulative[i] = running += report.proved_at[i];
  return report;
}

EvalReport cutoff_sweep(std::span<const RankingResult> rankings, const Prover& prover) {
  const auto cutoffs = default_cutoffs();
  return cutoff_sweep(rankings, prover, cutoffs);
}

std::string format_report(const EvalReport& report) {
  std::string out = "cutoff proved cumulative percent\n";
  char buf[128];
  for (std::size_t i = 0; i < report.cutoffs.size(); ++i) {
    const double pct = report.total ? 100.0 * static_cast<double>(report.cumulative[i]) / static_cast<double>(report.total) : 0.0;
    std::snprintf(buf, sizeof buf, "%zu %zu %zu %.1f\n", report.cutoffs[i], report.proved_at[i], report.cumulative[i], pct);
    out += buf;
  }
  return out;
}

nlohmann::json report_json(const EvalReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < report.cutoffs.size(); ++i) {
    rows.push_back({{"cutoff", report.cutoffs[i]},
                    {"proved", report.proved_at[i]},
                    {"cumulative", report.cumulative[i]},
                    {"percent", report.total ? 100.0 * static_cast<double>(report.cumulative[i]) /
                                                   static_cast<double>(report.total)
                                             : 0.0}});
  }
  nlohmann::json outcomes = nlohmann::json::array();
  for (const auto& o : report.outcomes) {
    nlohmann::json attempts = nlohmann::json::array();
    for (const auto& a : o.attempts) attempts.push_back({{"cutoff", a.cutoff}, {"status", status_name(a.status)}});
    outcomes.push_back({{"conjecture", o.conjecture},
                        {"proved_at", o.proved_at ? nlohmann::json(*o.proved_at) : nlohmann::json(nullptr)},
                        {"attempts", attempts}});
  }
  return {{"total", report.total}, {"table", rows}, {"outcomes", outcomes}};
}

}  // namespace premsel::eval
