#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

namespace anita::service {

inline constexpr std::size_t kMaxBodyBytes = 1 << 20;

struct Response {
  int status = 200;
  std::string body;
};

/// Request handlers. Each is a pure function of the request body, so the
/// server needs no shared state between requests.
Response handle_check(std::string_view body);
Response handle_latex(std::string_view body);
Response handle_prove(std::string_view body);
Response handle_health();

std::string_view version();

struct Options {
  std::string bind = "127.0.0.1";
  int port = 8601;  // 0 picks an ephemeral port
  /// Value of Access-Control-Allow-Origin. Empty means "*" when bound to
  /// loopback and no CORS header otherwise.
  std::string cors_origin;
};

class Server {
 public:
  explicit Server(Options options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds the listening socket; false when the address is unavailable.
  bool bind();
  int port() const;
  /// Serves until stop() is called. Requires a successful bind().
  void listen();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace anita::service
