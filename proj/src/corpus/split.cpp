#include "premsel/corpus/split.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "premsel/error.hpp"
#include "premsel/rng.hpp"

namespace premsel::corpus {

std::vector<StatementId> Split::evaluation() const {
  std::vector<StatementId> out;
  std::set_difference(test.begin(), test.end(), monitor.begin(), monitor.end(), std::back_inserter(out));
  return out;
}

Split make_split(const Corpus& corpus, double test_fraction, std::size_t monitor_count, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw UsageError("test fraction must lie strictly between 0 and 1");
  }
  std::vector<StatementId> order = corpus.provable();
  const auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(order.size())));
  if (order.size() < monitor_count || n_test < monitor_count || n_test == 0 || n_test >= order.size()) {
    throw DataError("TooSmallCorpus", std::to_string(order.size()) + " provable conjectures cannot hold " +
                                          std::to_string(n_test) + " test / " + std::to_string(monitor_count) +
                                          " monitor conjectures");
  }
  Rng rng(derive_seed(seed, "split"));
  rng.shuffle(order);
  Split s;
  s.test.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_test));
  s.monitor.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(monitor_count));
  s.train.assign(order.begin() + static_cast<std::ptrdiff_t>(n_test), order.end());
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.test.begin(), s.test.end());
  std::sort(s.monitor.begin(), s.monitor.end());
  return s;
}

std::string format_split(const Corpus& corpus, const Split& split) {
  std::vector<const char*> label(corpus.size(), nullptr);
  for (const StatementId id : split.train) label[id] = "train";
  for (const StatementId id : split.test) label[id] = "test";
  for (const StatementId id : split.monitor) label[id] = "monitor";
  std::string out;
  for (StatementId id = 0; id < corpus.size(); ++id) {
    if (!label[id]) continue;
    out += corpus[id].name;
    out += ' ';
    out += label[id];
    out += '\n';
  }
  return out;
}

Split parse_split(const Corpus& corpus, std::string_view text) {
  Split s;
  std::istringstream in{std::string(text)};
  std::string name, label;
  while (in >> name >> label) {
    const StatementId id = corpus.id_of(name);
    if (label == "train") {
      s.train.push_back(id);
    } else if (label == "test") {
      s.test.push_back(id);
    } else if (label == "monitor") {
      s.test.push_back(id);
      s.monitor.push_back(id);
    } else {
      throw DataError("FormatError", "split: bad label '" + label + "' for '" + name + "'");
    }
  }
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.test.begin(), s.test.end());
  std::sort(s.monitor.begin(), s.monitor.end());
  return s;
}

}  // namespace premsel::corpus
