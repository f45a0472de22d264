#pragma once

#include <string>

namespace tilebill {

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8765;
  std::string static_dir;  // served at / when non-empty
  std::size_t cache_capacity = 64;
};

/// Blocks until the server stops. POST /v1/session speaks the session
/// protocol; GET /health answers "ok". Returns false when the port is busy.
bool serve(const ServeOptions& options);

}  // namespace tilebill
