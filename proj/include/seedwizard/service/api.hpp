#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "seedwizard/analysis/annotate.hpp"
#include "seedwizard/federation/federation.hpp"
#include "seedwizard/service/codec.hpp"
#include "seedwizard/spec/repository.hpp"

namespace seedwizard {

struct ServiceConfig {
  std::size_t annotate_top_k = 5;
  std::size_t fetch_parallelism = 4;
  TextRankParams textrank;
};

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

inline ApiResponse error_response(const Error& e) {
  ojson body{{"error", {{"code", to_string(e.code())}, {"message", e.what()}}}};
  if (!e.detail().is_null()) body["error"]["detail"] = e.detail();
  return {http_status(e.code()), body.dump(), "application/json"};
}

/// JSON boundary over search, analysis and spec building. Every route maps to
/// one call here; state changes go through SpecRepository as single events.
///
///   POST /api/search                      federated search + annotations
///   POST /api/specs                       {"name"} -> new spec
///   GET  /api/specs/{id}                  current state
///   POST /api/specs/{id}/events           {"kind", "payload", "provenance"}
///   PUT  /api/specs/{id}/schedule         {"start", "duration_seconds"}
///   GET  /api/specs/{id}/export           canonical export document
///   GET  /api/specs/{id}/description      crawl description
class WizardService {
 public:
  WizardService(std::shared_ptr<const SearchFederation> federation, std::shared_ptr<const PageFetcher> fetcher,
                std::shared_ptr<const StopwordList> stopwords, std::shared_ptr<SpecRepository> specs,
                ServiceConfig config = {})
      : federation_(std::move(federation)),
        fetcher_(std::move(fetcher)),
        stopwords_(std::move(stopwords)),
        specs_(std::move(specs)),
        config_(std::move(config)) {}

  ApiResponse handle(std::string_view method, std::string_view path, std::string_view body) {
    try {
      return route(method, path, body);
    } catch (const Error& e) {
      return error_response(e);
    } catch (const std::exception& e) {
      return error_response(Error(ErrorCode::internal, e.what()));
    }
  }

  /// Body of POST /api/search:
  ///   {"query": "...", "limits": {"max_web_results": n, "max_posts": n},
  ///    "spec_id": "..."}   (limits and spec_id optional)
  ojson search(const nlohmann::json& request) {
    if (!request.is_object()) throw ValidationError("body", "must be an object");
    if (!request.contains("query") || !request["query"].is_string())
      throw ValidationError("query", "required string");
    int max_web = 10, max_posts = 100;
    if (request.contains("limits")) {
      const auto& limits = request["limits"];
      if (!limits.is_object()) throw ValidationError("limits", "must be an object");
      max_web = read_int(limits, "max_web_results", max_web);
      max_posts = read_int(limits, "max_posts", max_posts);
    }
    const auto query = Query::make(request["query"].get<std::string>(), max_web, max_posts);

    std::optional<std::uint64_t> logged;
    if (request.contains("spec_id") && !request["spec_id"].is_null()) {
      if (!request["spec_id"].is_string()) throw ValidationError("spec_id", "must be a string");
      const auto spec =
          specs_->apply_event(request["spec_id"].get<std::string>(), EventKind::QueryIssued,
                              QueryPayload{query.text}, Provenance{ProvenanceSource::manual, query.text});
      logged = spec.version;
    }

    const auto response = federation_->federated_search(query);
    std::vector<ResultBase> bases(response.web.begin(), response.web.end());
    const Analyzer analyzer{*fetcher_, config_.textrank, *stopwords_};
    const auto annotated = annotate_results(bases, analyzer, config_.annotate_top_k, config_.fetch_parallelism);

    ojson out;
    out["query"] = to_json(query);
    out["web"] = ojson::array();
    for (const auto& a : annotated) out["web"].push_back(to_json(a));
    out["social_links"] = ojson::array();
    for (const auto& l : response.social_links) out["social_links"].push_back(to_json(l));
    out["proposed_keywords"] = ojson::array();
    for (const auto& t : response.proposed_keywords) out["proposed_keywords"].push_back(to_json(t));
    out["sections"] = ojson::array();
    out["warnings"] = ojson::array();
    for (const auto& s : response.sections) {
      out["sections"].push_back(to_json(s));
      if (!s.ok) out["warnings"].push_back(s.connector + ": " + s.warning);
    }
    if (logged) out["logged_event_id"] = *logged;
    return out;
  }

 private:
  static nlohmann::json parse_body(std::string_view body) {
    if (text::trim(body).empty()) return nlohmann::json::object();
    try {
      return nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception&) {
      throw ValidationError("body", "malformed JSON");
    }
  }

  static int read_int(const nlohmann::json& j, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) throw ValidationError(key, "must be an integer");
    return j[key].get<int>();
  }

  static ApiResponse json_ok(const ojson& body, int status = 200) { return {status, body.dump(), "application/json"}; }

  static std::vector<std::string_view> split_path(std::string_view path) {
    std::vector<std::string_view> parts;
    if (const auto q = path.find('?'); q != std::string_view::npos) path = path.substr(0, q);
    while (!path.empty()) {
      const auto slash = path.find('/');
      const auto part = path.substr(0, slash);
      if (!part.empty()) parts.push_back(part);
      if (slash == std::string_view::npos) break;
      path.remove_prefix(slash + 1);
    }
    return parts;
  }

  ApiResponse route(std::string_view method, std::string_view path, std::string_view body) {
    const auto parts = split_path(path);
    if (parts.size() < 2 || parts[0] != "api") throw NotFoundError("route " + std::string(path));
    const auto& resource = parts[1];

    if (resource == "health" && parts.size() == 2 && method == "GET") return json_ok({{"status", "ok"}});
    if (resource == "search" && parts.size() == 2 && method == "POST") return json_ok(search(parse_body(body)));
    if (resource != "specs") throw NotFoundError("route " + std::string(path));

    if (parts.size() == 2) {
      if (method == "POST") {
        const auto req = parse_body(body);
        if (!req.is_object() || !req.contains("name") || !req["name"].is_string())
          throw ValidationError("name", "required string");
        const auto id = specs_->create_spec(req["name"].get<std::string>());
        return json_ok(spec_to_json(specs_->get(id)), 201);
      }
      if (method == "GET") return json_ok({{"spec_ids", specs_->list()}});
      throw NotFoundError("route " + std::string(method) + " " + std::string(path));
    }

    const std::string id(parts[2]);
    if (parts.size() == 3 && method == "GET") return json_ok(spec_to_json(specs_->get(id)));
    if (parts.size() == 4) {
      const auto& action = parts[3];
      if (action == "events" && method == "POST") return post_event(id, parse_body(body));
      if (action == "events" && method == "GET") {
        ojson events = ojson::array();
        for (const auto& e : specs_->events(id)) events.push_back(event_to_json(e));
        return json_ok({{"events", events}});
      }
      if (action == "schedule" && method == "PUT") {
        const auto req = parse_body(body);
        const auto schedule = schedule_from_json(req, "schedule");
        return json_ok(spec_to_json(specs_->set_schedule(id, schedule.start, schedule.duration,
                                                         provenance_from_json(req.value("provenance", nlohmann::json())))));
      }
      if (action == "export" && method == "GET") return {200, specs_->export_spec(id), "application/json"};
      if (action == "description" && method == "GET") return json_ok(to_json(specs_->crawl_description(id)));
    }
    throw NotFoundError("route " + std::string(method) + " " + std::string(path));
  }

  ApiResponse post_event(const std::string& id, const nlohmann::json& req) {
    if (!req.is_object() || !req.contains("kind") || !req["kind"].is_string())
      throw ValidationError("kind", "required string");
    const auto kind = parse_event_kind(req["kind"].get<std::string>());
    auto payload = payload_from_json(kind, req.value("payload", nlohmann::json::object()));
    auto provenance = provenance_from_json(req.value("provenance", nlohmann::json()));
    const auto applied = specs_->append_event(id, kind, std::move(payload), std::move(provenance));
    return json_ok({{"spec", spec_to_json(applied.spec)}, {"event", event_to_json(applied.event)}}, 201);
  }

  std::shared_ptr<const SearchFederation> federation_;
  std::shared_ptr<const PageFetcher> fetcher_;
  std::shared_ptr<const StopwordList> stopwords_;
  std::shared_ptr<SpecRepository> specs_;
  ServiceConfig config_;
};

}  // namespace seedwizard
