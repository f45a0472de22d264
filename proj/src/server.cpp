#include "tilebill/server.hpp"

#include "tilebill/session.hpp"

#include <httplib.h>

#include <cstdio>

namespace tilebill {

bool serve(const ServeOptions& options) {
  SpecCache cache(options.cache_capacity);
  httplib::Server server;
  server.Post("/v1/session", [&](const httplib::Request& req, httplib::Response& res) {
    res.set_content(handle_request_text(req.body, cache), "application/json");
  });
  server.Get("/health", [](const httplib::Request&, httplib::Response& res) { res.set_content("ok", "text/plain"); });
  server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
    res.status = 500;
    res.set_content(error_response("internal", "unhandled exception").dump(), "application/json");
  });
  if (!options.static_dir.empty() && !server.set_mount_point("/", options.static_dir)) {
    std::fprintf(stderr, "static directory not found: %s\n", options.static_dir.c_str());
    return false;
  }
  if (!server.bind_to_port(options.host, options.port)) return false;
  std::fprintf(stderr, "listening on http://%s:%d\n", options.host.c_str(), options.port);
  return server.listen_after_bind();
}

}  // namespace tilebill
