#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>

#include <CLI11.hpp>
#include <httplib.h>

#include "seedwizard/seedwizard.hpp"

namespace {

httplib::Server* g_server = nullptr;

void stop_server(int) {
  if (g_server != nullptr) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crawl specification wizard service"};
  int port = 8090;
  std::string bind = "127.0.0.1";
  std::string data_dir = "wizard-data";
  std::string fixtures_dir;
  std::string stopwords_path = SEEDWIZARD_DEFAULT_STOPWORDS;
  std::size_t annotate_top_k = 5;
  std::string connectors_config;
  std::string user_agent = "seedwizard/0.1";
  app.add_option("--port", port, "Listen port (0 picks a free one)")->capture_default_str();
  app.add_option("--bind", bind, "Listen address")->capture_default_str();
  app.add_option("--data-dir", data_dir, "Directory holding spec event logs")->capture_default_str();
  app.add_option("--fixtures-dir", fixtures_dir, "Serve recorded search/page fixtures instead of live APIs");
  app.add_option("--stopwords", stopwords_path, "Stopword list for keyword extraction")->capture_default_str();
  app.add_option("--annotate-top-k", annotate_top_k, "Web results analyzed per query")->capture_default_str();
  app.add_option("--connectors", connectors_config,
                 "Live connector config (JSON: {\"connectors\": [{id, kind, endpoint, credential_env}]})");
  app.add_option("--user-agent", user_agent, "User-Agent for page fetches")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  using namespace seedwizard;
  try {
    auto clock = std::make_shared<SystemClock>();
    auto federation = std::make_shared<SearchFederation>();
    std::shared_ptr<const PageFetcher> fetcher;
    FetchPolicy policy;
    policy.user_agent = user_agent;

    if (!fixtures_dir.empty()) {
      add_fixture_connectors(*federation, std::filesystem::path(fixtures_dir) / "connectors");
      fetcher = std::make_shared<DirectoryPageFetcher>(std::filesystem::path(fixtures_dir) / "pages", policy, clock);
    } else {
      if (connectors_config.empty()) {
        LiveConnectorConfig web{"bing", "https://api.bing.microsoft.com/v7.0/search", "WIZARD_WEBSEARCH_KEY"};
        LiveConnectorConfig social{"twitter", "https://api.twitter.com/2/tweets/search/recent", "WIZARD_SOCIAL_TOKEN"};
        federation->add(std::make_shared<const LiveWebConnector>(web));
        federation->add(std::make_shared<const LiveSocialConnector>(social));
      } else {
        const auto doc = read_json_file(connectors_config);
        for (const auto& c : doc.at("connectors")) {
          LiveConnectorConfig cfg;
          cfg.id = c.at("id").get<std::string>();
          cfg.endpoint = c.at("endpoint").get<std::string>();
          cfg.credential_env = c.at("credential_env").get<std::string>();
          cfg.timeout = std::chrono::seconds{c.value("timeout_seconds", 10)};
          cfg.user_agent = user_agent;
          if (c.value("kind", "web") == "social")
            federation->add(std::make_shared<const LiveSocialConnector>(cfg));
          else
            federation->add(std::make_shared<const LiveWebConnector>(cfg));
        }
      }
      fetcher = std::make_shared<HttpPageFetcher>(policy, clock);
    }

    auto stopwords = std::make_shared<StopwordList>(StopwordList::load(stopwords_path));
    auto store = std::make_shared<EventStore>(data_dir);
    auto specs = std::make_shared<SpecRepository>(store, clock);
    ServiceConfig config;
    config.annotate_top_k = annotate_top_k;
    WizardService service(federation, fetcher, stopwords, specs, config);

    httplib::Server server;
    mount(server, service);
    g_server = &server;
    std::signal(SIGINT, stop_server);
    std::signal(SIGTERM, stop_server);
    if (port == 0) {
      port = server.bind_to_any_port(bind);
      if (port <= 0) {
        std::cerr << "cannot listen on " << bind << "\n";
        return 1;
      }
    } else if (!server.bind_to_port(bind, port)) {
      std::cerr << "cannot listen on " << bind << ":" << port << "\n";
      return 1;
    }
    std::cout << "listening on http://" << bind << ":" << port
              << (fixtures_dir.empty() ? " (live connectors)" : " (fixture mode)") << std::endl;
    server.listen_after_bind();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
