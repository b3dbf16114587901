#pragma once

#include <httplib.h>

#include "seedwizard/service/api.hpp"

namespace seedwizard {

/// Routes every /api request on server to service.
inline void mount(httplib::Server& server, WizardService& service) {
  auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
    const auto out = service.handle(req.method, req.path, req.body);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  server.Get("/api/.*", forward);
  server.Post("/api/.*", forward);
  server.Put("/api/.*", forward);
  server.Delete("/api/.*", forward);
}

}  // namespace seedwizard
