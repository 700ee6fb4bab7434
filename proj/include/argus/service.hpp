#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "argus/argument_model.hpp"
#include "argus/confidence_network.hpp"
#include "argus/propagation.hpp"

namespace argus {

struct HttpRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// Compute head behind the what-if UI: one immutable model snapshot, replaced
/// atomically on PUT. Request handling is reentrant; every handler works on
/// the snapshot current when it started.
///
/// Routes:
///   GET  /api/model     current document + revision (404 when none)
///   PUT  /api/model     validate, transform, store (422 with violations)
///   GET  /api/network   network JSON; `?format=dot` adds a `dot` field
///   POST /api/evaluate  {overrides: {ID: g, "w:NODE:IDX": p, "v:NODE": v}}
///   POST /api/tornado   {target, top?, variables?}
class Service {
 public:
  struct Snapshot {
    ArgumentModel model;
    ConfidenceNetwork network;
    Assessment baseline;
    std::uint64_t revision = 0;
  };

  Service() = default;
  explicit Service(ArgumentModel model);

  /// Installs a new snapshot; returns its revision.
  std::uint64_t load(ArgumentModel model);
  std::shared_ptr<const Snapshot> snapshot() const;

  HttpResponse handle(const HttpRequest& request);

 private:
  HttpResponse get_model() const;
  HttpResponse put_model(const std::string& body);
  HttpResponse get_network(const HttpRequest& request) const;
  HttpResponse evaluate(const std::string& body) const;
  HttpResponse run_tornado(const std::string& body) const;

  mutable std::mutex mutex_;
  std::shared_ptr<const Snapshot> current_;
  std::uint64_t revision_ = 0;
};

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::string cors_origin = "*";
};

/// HTTP/1.1 front end for a Service.
class HttpServer {
 public:
  HttpServer(Service& service, ServeOptions options);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds the socket; returns the bound port. Throws std::runtime_error.
  int bind();
  /// Serves until stop(); call after bind().
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace argus
