#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "seedwizard/analysis/stopwords.hpp"
#include "seedwizard/analysis/tokenize.hpp"
#include "seedwizard/analysis/types.hpp"

namespace seedwizard {

/// Knobs of the keyword ranker. Bounds are checked on construction, so a
/// TextRankParams value is always usable.
class TextRankParams {
 public:
  struct Options {
    double damping = 0.85;
    int window = 2;
    double epsilon = 1e-4;
    int max_iterations = 100;
    double keyword_fraction = 1.0 / 3.0;
    int max_keywords = 10;
  };

  TextRankParams() : TextRankParams(Options{}) {}

  explicit TextRankParams(const Options& o) : o_(o) {
    if (!(o.damping > 0.0 && o.damping < 1.0)) throw ValidationError("damping", "must lie in (0, 1)");
    if (o.window < 2) throw ValidationError("window", "must be >= 2");
    if (!(o.epsilon > 0.0)) throw ValidationError("epsilon", "must be positive");
    if (o.max_iterations < 1) throw ValidationError("max_iterations", "must be >= 1");
    if (!(o.keyword_fraction > 0.0 && o.keyword_fraction <= 1.0))
      throw ValidationError("keyword_fraction", "must lie in (0, 1]");
    if (o.max_keywords < 1) throw ValidationError("max_keywords", "must be >= 1");
  }

  double damping() const { return o_.damping; }
  int window() const { return o_.window; }
  double epsilon() const { return o_.epsilon; }
  int max_iterations() const { return o_.max_iterations; }
  double keyword_fraction() const { return o_.keyword_fraction; }
  int max_keywords() const { return o_.max_keywords; }
  const Options& options() const { return o_; }

 private:
  Options o_;
};

/// Undirected weighted co-occurrence graph over candidate terms. Vertices are
/// numbered in order of first appearance; edges never loop and are stored in
/// both directions with the same weight.
class TermGraph {
 public:
  std::size_t add_term(std::string_view term) {
    const auto [it, inserted] = index_.try_emplace(std::string(term), terms_.size());
    if (inserted) {
      terms_.emplace_back(term);
      adjacency_.emplace_back();
      scores_.push_back(1.0);
    }
    return it->second;
  }

  /// Adds count to the weight of edge {a, b}. Self pairs are ignored.
  void add_cooccurrence(std::size_t a, std::size_t b, int count = 1) {
    if (a == b || count <= 0) return;
    adjacency_.at(a)[b] += count;
    adjacency_.at(b)[a] += count;
  }

  std::size_t vertex_count() const { return terms_.size(); }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (const auto& adj : adjacency_) twice += adj.size();
    return twice / 2;
  }

  int weight(std::size_t a, std::size_t b) const {
    const auto& adj = adjacency_.at(a);
    const auto it = adj.find(b);
    return it == adj.end() ? 0 : it->second;
  }

  const std::map<std::size_t, int>& neighbors(std::size_t v) const { return adjacency_.at(v); }
  const std::string& term(std::size_t v) const { return terms_.at(v); }
  std::span<const std::string> terms() const { return terms_; }

  std::optional<std::size_t> find(std::string_view term) const {
    const auto it = index_.find(std::string(term));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  double score(std::size_t v) const { return scores_.at(v); }
  std::span<const double> scores() const { return scores_; }
  int iterations() const { return iterations_; }

  void set_scores(std::vector<double> scores, int iterations) {
    scores_ = std::move(scores);
    iterations_ = iterations;
  }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::map<std::size_t, int>> adjacency_;
  std::vector<double> scores_;
  int iterations_ = 0;
};

/// Whether a token may become a graph vertex: alphabetic, at least three
/// code points, and not a stopword.
inline bool is_candidate_term(const WordToken& token, const StopwordList& stopwords) {
  return token.alphabetic && token.length >= 3 && !stopwords.contains(token.lower);
}

/// Links every pair of candidates that are fewer than window positions apart
/// in the filtered candidate sequence.
inline TermGraph build_term_graph_from_candidates(const std::vector<std::string>& candidates, int window) {
  TermGraph graph;
  std::vector<std::size_t> ids;
  ids.reserve(candidates.size());
  for (const auto& c : candidates) ids.push_back(graph.add_term(c));
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size() && j - i < static_cast<std::size_t>(window); ++j)
      graph.add_cooccurrence(ids[i], ids[j]);
  return graph;
}

inline std::vector<std::string> candidate_terms(std::string_view text, const StopwordList& stopwords) {
  std::vector<std::string> out;
  for (auto& t : tokenize_words(text))
    if (is_candidate_term(t, stopwords)) out.push_back(std::move(t.lower));
  return out;
}

inline TermGraph build_term_graph(std::string_view text, const TextRankParams& params,
                                  const StopwordList& stopwords = {}) {
  return build_term_graph_from_candidates(candidate_terms(text, stopwords), params.window());
}

/// Iterates WS(i) = (1 - d) + d * sum_j (w_ji / sum_k w_jk) * WS(j) from 1.0
/// everywhere, updating all vertices from the previous sweep, until the
/// largest change drops below epsilon or the iteration budget runs out.
inline TermGraph rank_terms(TermGraph graph, const TextRankParams& params) {
  const std::size_t n = graph.vertex_count();
  const double d = params.damping();
  std::vector<double> out_weight(n, 0.0);
  for (std::size_t v = 0; v < n; ++v)
    for (const auto& [u, w] : graph.neighbors(v)) out_weight[v] += w;

  std::vector<double> current(n, 1.0), next(n, 0.0);
  int iterations = 0;
  while (iterations < params.max_iterations()) {
    ++iterations;
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (const auto& [j, w] : graph.neighbors(i)) sum += w / out_weight[j] * current[j];
      next[i] = (1.0 - d) + d * sum;
      delta = std::max(delta, std::abs(next[i] - current[i]));
    }
    current.swap(next);
    if (delta < params.epsilon()) break;
  }
  graph.set_scores(std::move(current), iterations);
  return graph;
}

/// Indices of the top ceil(fraction * |V|) vertices (at most max_keywords),
/// best score first, ties by term.
inline std::vector<std::size_t> select_top_terms(const TermGraph& ranked, const TextRankParams& params) {
  const std::size_t n = ranked.vertex_count();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (ranked.score(a) != ranked.score(b)) return ranked.score(a) > ranked.score(b);
    return ranked.term(a) < ranked.term(b);
  });
  // The small slack keeps e.g. (1/3) * 9 from rounding up to 4.
  auto take = static_cast<std::size_t>(std::ceil(params.keyword_fraction() * double(n) - 1e-9));
  take = std::min({take, n, static_cast<std::size_t>(params.max_keywords())});
  order.resize(take);
  return order;
}

/// Keywords of a text: rank candidate terms, keep the top share, then merge
/// selected terms that stand next to each other in the text into phrases
/// scored by their best member. A term absorbed into a phrase is not
/// reported on its own. Sorted by score, then text.
inline std::vector<Keyword> textrank_keywords(std::string_view text, const TextRankParams& params,
                                              const StopwordList& stopwords = {}) {
  const auto tokens = tokenize_words(text);
  std::vector<std::string> candidates;
  for (const auto& t : tokens)
    if (is_candidate_term(t, stopwords)) candidates.push_back(t.lower);
  const auto ranked = rank_terms(build_term_graph_from_candidates(candidates, params.window()), params);
  if (ranked.vertex_count() == 0) return {};

  std::map<std::string, double> selected;
  for (auto v : select_top_terms(ranked, params)) selected.emplace(ranked.term(v), ranked.score(v));

  std::map<std::string, double> phrases;
  std::set<std::string> absorbed;
  for (std::size_t i = 0; i < tokens.size();) {
    if (!is_candidate_term(tokens[i], stopwords) || !selected.count(tokens[i].lower)) {
      ++i;
      continue;
    }
    std::vector<std::string> run{tokens[i].lower};
    std::size_t j = i + 1;
    while (j < tokens.size() && tokens[j].joined_to_previous && is_candidate_term(tokens[j], stopwords) &&
           selected.count(tokens[j].lower) &&
           std::find(run.begin(), run.end(), tokens[j].lower) == run.end()) {
      run.push_back(tokens[j].lower);
      ++j;
    }
    if (run.size() > 1) {
      std::string phrase;
      double score = 0.0;
      for (const auto& term : run) {
        if (!phrase.empty()) phrase.push_back(' ');
        phrase += term;
        score = std::max(score, selected.at(term));
        absorbed.insert(term);
      }
      phrases.emplace(std::move(phrase), score);
    }
    i = j;
  }

  std::vector<Keyword> out;
  for (const auto& [phrase, score] : phrases) out.push_back({phrase, score, KeywordOrigin::textrank});
  for (const auto& [term, score] : selected)
    if (!absorbed.count(term)) out.push_back({term, score, KeywordOrigin::textrank});
  std::sort(out.begin(), out.end(), [](const Keyword& a, const Keyword& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.text < b.text;
  });
  return out;
}

}  // namespace seedwizard
