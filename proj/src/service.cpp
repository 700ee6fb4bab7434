#include "argus/service.hpp"

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "argus/dot_export.hpp"
#include "argus/error.hpp"
#include "argus/model_document.hpp"
#include "argus/report_document.hpp"
#include "argus/sensitivity.hpp"

namespace argus {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

HttpResponse reply(int status, const ordered_json& body) {
  return {status, body.dump() + "\n"};
}

HttpResponse error_reply(int status, std::string_view code,
                         const std::string& message, const std::string& path,
                         const Service::Snapshot* snap) {
  ordered_json body;
  body["code"] = code;
  body["message"] = message;
  if (!path.empty()) body["path"] = path;
  if (snap != nullptr) body["revision"] = snap->revision;
  return reply(status, body);
}

HttpResponse no_model() {
  return error_reply(404, "NoModel", "no model loaded", "", nullptr);
}

// Parses a JSON request body; an empty body reads as {}.
std::optional<json> parse_body(const std::string& body, HttpResponse& failure,
                               const Service::Snapshot* snap) {
  if (body.find_first_not_of(" \t\r\n") == std::string::npos) {
    return json::object();
  }
  try {
    json j = json::parse(body);
    if (!j.is_object()) {
      failure = error_reply(400, "SyntaxError", "request body must be a JSON object",
                            "", snap);
      return std::nullopt;
    }
    return j;
  } catch (const json::parse_error& e) {
    failure = error_reply(400, "SyntaxError", e.what(), "", snap);
    return std::nullopt;
  }
}

std::optional<std::string> unknown_key(const json& body,
                                       std::initializer_list<std::string_view> allowed) {
  for (auto it = body.begin(); it != body.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
      return it.key();
    }
  }
  return std::nullopt;
}

ordered_json with_revision(const Service::Snapshot& snap, ordered_json body) {
  ordered_json out;
  out["revision"] = snap.revision;
  for (auto& [k, v] : body.items()) out[k] = std::move(v);
  return out;
}

}  // namespace

Service::Service(ArgumentModel model) { load(std::move(model)); }

std::uint64_t Service::load(ArgumentModel model) {
  auto network = transform(model);
  auto baseline = baseline_assessment(model);
  std::lock_guard lock(mutex_);
  auto snap = std::make_shared<Snapshot>(
      Snapshot{std::move(model), std::move(network), std::move(baseline), ++revision_});
  current_ = std::move(snap);
  spdlog::info("loaded model revision {}", revision_);
  return revision_;
}

std::shared_ptr<const Service::Snapshot> Service::snapshot() const {
  std::lock_guard lock(mutex_);
  return current_;
}

HttpResponse Service::handle(const HttpRequest& request) {
  const auto& m = request.method;
  const auto& p = request.path;
  auto method_not_allowed = [&] {
    return error_reply(405, "MethodNotAllowed", m + " not allowed on " + p, "",
                       nullptr);
  };
  try {
    if (p == "/api/model") {
      if (m == "GET") return get_model();
      if (m == "PUT") return put_model(request.body);
      return method_not_allowed();
    }
    if (p == "/api/network") {
      if (m == "GET") return get_network(request);
      return method_not_allowed();
    }
    if (p == "/api/evaluate") {
      if (m == "POST") return evaluate(request.body);
      return method_not_allowed();
    }
    if (p == "/api/tornado") {
      if (m == "POST") return run_tornado(request.body);
      return method_not_allowed();
    }
    return error_reply(404, "NotFound", "no route " + p, "", nullptr);
  } catch (const std::exception& e) {
    spdlog::error("{} {} failed: {}", m, p, e.what());
    return error_reply(500, "InternalError", e.what(), "", nullptr);
  }
}

HttpResponse Service::get_model() const {
  const auto snap = snapshot();
  if (!snap) return no_model();
  ordered_json body;
  body["model"] = model_to_json(snap->model);
  return reply(200, with_revision(*snap, std::move(body)));
}

HttpResponse Service::put_model(const std::string& body) {
  try {
    const auto revision = load(parse_model(body));
    const auto snap = snapshot();
    ordered_json out;
    out["root"] = snap->network.root();
    out["nodes"] = snap->network.size();
    // Another PUT may have landed in between; report the revision we stored.
    out["revision"] = revision;
    return reply(200, out);
  } catch (const ValidationError& e) {
    ordered_json out;
    out["code"] = "ValidationFailed";
    out["message"] = std::to_string(e.violations().size()) + " violation(s)";
    auto& list = out["violations"] = ordered_json::array();
    for (const auto& v : e.violations()) {
      ordered_json j;
      j["code"] = to_string(v.code);
      j["message"] = v.message;
      if (!v.path.empty()) j["path"] = v.path;
      list.push_back(std::move(j));
    }
    if (const auto snap = snapshot()) out["revision"] = snap->revision;
    return reply(422, out);
  }
}

HttpResponse Service::get_network(const HttpRequest& request) const {
  const auto snap = snapshot();
  if (!snap) return no_model();
  ordered_json body;
  body["network"] = network_to_json(snap->network);
  auto format = request.query.find("format");
  if (format != request.query.end()) {
    if (format->second == "dot") {
      body["dot"] = export_dot(snap->network);
    } else if (format->second != "json") {
      return error_reply(422, "SchemaError", "format must be json or dot",
                         "format", snap.get());
    }
  }
  return reply(200, with_revision(*snap, std::move(body)));
}

HttpResponse Service::evaluate(const std::string& body) const {
  const auto snap = snapshot();
  if (!snap) return no_model();
  HttpResponse failure;
  const auto request = parse_body(body, failure, snap.get());
  if (!request) return failure;
  if (auto key = unknown_key(*request, {"overrides"})) {
    return error_reply(422, "SchemaError", "unknown key '" + *key + "'", *key,
                       snap.get());
  }
  try {
    Overrides overrides;
    if (auto it = request->find("overrides"); it != request->end()) {
      if (!it->is_object()) {
        return error_reply(422, "SchemaError", "overrides must be an object",
                           "overrides", snap.get());
      }
      for (auto o = it->begin(); o != it->end(); ++o) {
        if (!o->is_number()) {
          return error_reply(422, "SchemaError", "override value must be a number",
                             "overrides." + o.key(), snap.get());
        }
        add_override(overrides, o.key(), o->get<double>());
      }
    }
    const auto assessment = patched(snap->baseline, overrides.leaves);
    const auto result = propagate(snap->network, assessment, overrides.parameters);
    return reply(200, with_revision(*snap, to_json(make_report(result))));
  } catch (const Error& e) {
    const std::string path = e.path().empty() ? "" : "overrides." + e.path();
    return error_reply(422, to_string(e.code()), e.what(), path, snap.get());
  }
}

HttpResponse Service::run_tornado(const std::string& body) const {
  const auto snap = snapshot();
  if (!snap) return no_model();
  HttpResponse failure;
  const auto request = parse_body(body, failure, snap.get());
  if (!request) return failure;
  if (auto key = unknown_key(*request, {"target", "top", "variables"})) {
    return error_reply(422, "SchemaError", "unknown key '" + *key + "'", *key,
                       snap.get());
  }
  auto target = request->find("target");
  if (target == request->end() || !target->is_string()) {
    return error_reply(422, "SchemaError", "target (string) is required",
                       "target", snap.get());
  }
  std::size_t top = static_cast<std::size_t>(-1);
  if (auto it = request->find("top"); it != request->end()) {
    if (!it->is_number_unsigned()) {
      return error_reply(422, "SchemaError", "top must be a non-negative integer",
                         "top", snap.get());
    }
    top = it->get<std::size_t>();
  }
  std::vector<std::string> variables;
  if (auto it = request->find("variables"); it != request->end()) {
    if (!it->is_array() ||
        !std::all_of(it->begin(), it->end(), [](const json& v) { return v.is_string(); })) {
      return error_reply(422, "SchemaError", "variables must be a list of keys",
                         "variables", snap.get());
    }
    variables = it->get<std::vector<std::string>>();
  }
  try {
    auto report = tornado(snap->network, snap->baseline,
                          target->get<std::string>(), variables);
    if (report.entries.size() > top) report.entries.resize(top);
    ordered_json out;
    out["tornado"] = to_json(make_tornado_section(report));
    return reply(200, with_revision(*snap, std::move(out)));
  } catch (const Error& e) {
    const std::string path =
        e.code() == ErrorCode::UnknownTarget ? "target" : "variables";
    return error_reply(422, to_string(e.code()), e.what(), path, snap.get());
  }
}

struct HttpServer::Impl {
  Impl(Service& s, ServeOptions o) : service(s), options(std::move(o)) {}
  Service& service;
  ServeOptions options;
  httplib::Server server;
};

HttpServer::HttpServer(Service& service, ServeOptions options)
    : impl_(std::make_unique<Impl>(service, std::move(options))) {
  auto& server = impl_->server;
  const std::string origin = impl_->options.cors_origin;
  server.set_default_headers({{"Access-Control-Allow-Origin", origin},
                              {"Access-Control-Allow-Methods",
                               "GET, PUT, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
    HttpRequest request{req.method, req.path, {}, req.body};
    for (const auto& [k, v] : req.params) request.query.emplace(k, v);
    const auto response = impl_->service.handle(request);
    res.status = response.status;
    res.set_content(response.body, response.content_type);
  };
  const std::string any = R"(/.*)";
  server.Get(any, dispatch);
  server.Put(any, dispatch);
  server.Post(any, dispatch);
  server.Delete(any, dispatch);
  server.Options(any, [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });
  server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    ordered_json body{{"code", res.status == 404 ? "NotFound" : "BadRequest"},
                      {"message", req.method + " " + req.path + " rejected"}};
    res.set_content(body.dump() + "\n", "application/json");
  });
  server.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string message = "unhandled error";
        try {
          if (ep) std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          message = e.what();
        } catch (...) {
        }
        ordered_json body{{"code", "InternalError"}, {"message", message}};
        res.status = 500;
        res.set_content(body.dump() + "\n", "application/json");
      });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind() {
  auto& o = impl_->options;
  if (o.port == 0) {
    o.port = impl_->server.bind_to_any_port(o.host);
    if (o.port < 0) throw std::runtime_error("cannot bind " + o.host);
  } else if (!impl_->server.bind_to_port(o.host, o.port)) {
    throw std::runtime_error("cannot bind " + o.host + ":" + std::to_string(o.port));
  }
  spdlog::info("listening on {}:{}", o.host, o.port);
  return o.port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace argus
