#pragma once

#include <algorithm>
#include <atomic>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "seedwizard/analysis/entities.hpp"
#include "seedwizard/analysis/fetch.hpp"
#include "seedwizard/analysis/textrank.hpp"
#include "seedwizard/federation/types.hpp"

namespace seedwizard {

enum class AnalysisStatus { ok, fetch_failed, skipped };

inline std::string_view to_string(AnalysisStatus s) {
  switch (s) {
    case AnalysisStatus::ok: return "ok";
    case AnalysisStatus::fetch_failed: return "fetch_failed";
    case AnalysisStatus::skipped: return "skipped";
  }
  return "skipped";
}

using ResultBase = std::variant<WebResult, RankedLink>;

inline const std::string& url_of(const ResultBase& base) {
  return std::visit([](const auto& b) -> const std::string& { return b.url; }, base);
}

/// A search hit plus what page analysis found. keywords and entities stay
/// empty unless status is ok.
struct AnnotatedResult {
  ResultBase base;
  std::vector<Keyword> keywords;
  std::vector<Entity> entities;
  AnalysisStatus status = AnalysisStatus::skipped;
};

/// Everything annotation needs besides the result itself.
struct Analyzer {
  const PageFetcher& fetcher;
  TextRankParams params;
  const StopwordList& stopwords;
};

inline AnnotatedResult annotate_result(const ResultBase& base, const Analyzer& analyzer) {
  AnnotatedResult out{base, {}, {}, AnalysisStatus::fetch_failed};
  const auto& url = url_of(base);
  if (url.empty()) throw ValidationError("url", "result carries no URL");
  const auto page = analyzer.fetcher.fetch(url);
  if (!page.ok()) return out;
  if (!page.is_html()) {
    out.status = AnalysisStatus::skipped;
    return out;
  }
  out.status = AnalysisStatus::ok;
  out.keywords = textrank_keywords(page.text, analyzer.params, analyzer.stopwords);
  out.entities = extract_entities(page.text);
  return out;
}

/// Annotates bases[i] for i < limit (the rest come back skipped) using at most
/// max_parallel concurrent fetches. Output order matches input order.
inline std::vector<AnnotatedResult> annotate_results(const std::vector<ResultBase>& bases, const Analyzer& analyzer,
                                                     std::size_t limit, std::size_t max_parallel = 4) {
  std::vector<AnnotatedResult> out;
  out.reserve(bases.size());
  for (const auto& b : bases) out.push_back({b, {}, {}, AnalysisStatus::skipped});
  const std::size_t todo = std::min(limit, bases.size());
  if (todo == 0) return out;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < todo; i = next++) out[i] = annotate_result(bases[i], analyzer);
  };
  for (std::size_t i = 0; i < todo; ++i)
    if (url_of(bases[i]).empty()) throw ValidationError("url", "result carries no URL");
  {
    std::vector<std::jthread> pool;
    const std::size_t threads = std::clamp<std::size_t>(max_parallel, 1, todo);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return out;
}

}  // namespace seedwizard
