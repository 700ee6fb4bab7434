#include "argus/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "argus/dot_export.hpp"
#include "argus/error.hpp"
#include "argus/model_document.hpp"
#include "argus/numeric_format.hpp"
#include "argus/report_document.hpp"
#include "argus/sensitivity.hpp"
#include "argus/service.hpp"
#include "argus/tornado_render.hpp"

namespace argus {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void configure_logging(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto logger = std::make_shared<spdlog::logger>("argus", sink);
  logger->set_pattern("argus: [%l] %v");
  auto level = spdlog::level::warn;
  if (const char* env = std::getenv("ARGUS_LOG")) {
    const std::string v(env);
    if (v == "error") level = spdlog::level::err;
    else if (v == "warn") level = spdlog::level::warn;
    else if (v == "info") level = spdlog::level::info;
    else if (v == "debug") level = spdlog::level::debug;
  }
  logger->set_level(level);
  spdlog::set_default_logger(std::move(logger));
}

std::string num(double x) { return shortest(round_significant(x, kReportDigits)); }

Overrides parse_sets(const std::vector<std::string>& sets) {
  Overrides overrides;
  for (const auto& s : sets) {
    const auto eq = s.rfind('=');
    double value = 0.0;
    if (eq == std::string::npos || eq == 0 ||
        !parse_real(s.substr(eq + 1), value)) {
      throw UsageError("--set expects KEY=VALUE with a decimal value, got '" + s +
                       "'");
    }
    add_override(overrides, s.substr(0, eq), value);
  }
  return overrides;
}

struct Options {
  std::string file;
  std::string format;
  std::vector<std::string> sets;
  std::string target;
  std::size_t top = static_cast<std::size_t>(-1);
  std::vector<std::string> variables;
  std::string dot_out;
  bool with_values = false;
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string cors_origin = "*";
};

int cmd_validate(const Options& o, std::ostream& out) {
  try {
    const auto model = load_model(o.file);
    spdlog::debug("{} nodes, root {}", model.nodes().size(), model.root());
    out << "OK\n";
    return kExitOk;
  } catch (const ValidationError& e) {
    for (const auto& v : e.violations()) out << format_violation(v) << "\n";
    return kExitDomainError;
  }
}

int cmd_transform(const Options& o, std::ostream& out) {
  const auto network = transform(load_model(o.file));
  if (o.format == "dot") {
    out << export_dot(network);
  } else {
    out << network_to_json(network).dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_evaluate(const Options& o, std::ostream& out) {
  const auto model = load_model(o.file);
  const auto network = transform(model);
  const auto overrides = parse_sets(o.sets);
  const auto assessment = patched(baseline_assessment(model), overrides.leaves);
  const auto result = propagate(network, assessment, overrides.parameters);
  if (o.format == "json") {
    out << serialize_report(make_report(result));
  } else {
    for (const auto& id : topological_order(network)) {
      out << id << " " << num(result.at(id)) << "\n";
    }
  }
  return kExitOk;
}

int cmd_tornado(const Options& o, std::ostream& out) {
  const auto model = load_model(o.file);
  const auto network = transform(model);
  const auto assessment = baseline_assessment(model);
  auto report = tornado(network, assessment, o.target, o.variables);
  if (o.format == "svg") {
    out << render_tornado_svg(report, o.top);
  } else if (o.format == "json") {
    if (report.entries.size() > o.top) report.entries.resize(o.top);
    const auto result = propagate(network, assessment);
    out << serialize_report(make_report(result, &report));
  } else {
    out << render_tornado_text(report, o.top);
  }
  return kExitOk;
}

int cmd_export(const Options& o, std::ostream& out) {
  const auto model = load_model(o.file);
  const auto network = transform(model);
  std::string dot;
  if (o.with_values) {
    const auto result = propagate(network, baseline_assessment(model));
    dot = export_dot(network, &result);
  } else {
    dot = export_dot(network);
  }
  std::ofstream file(o.dot_out, std::ios::binary);
  if (!file || !(file << dot)) {
    throw Error(ErrorCode::SyntaxError, "cannot write '" + o.dot_out + "'");
  }
  out << "wrote " << o.dot_out << "\n";
  return kExitOk;
}

int cmd_serve(const Options& o, std::ostream& out) {
  Service service(load_model(o.file));
  HttpServer server(service, {o.host, o.port, o.cors_origin});
  const int port = server.bind();
  out << "listening on http://" << o.host << ":" << port << std::endl;
  server.listen();
  return kExitOk;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out,
            std::ostream& err) {
  configure_logging(err);
  CLI::App app{"Confidence propagation and tornado analysis for GSN safety cases",
               "argus"};
  app.require_subcommand(1);
  Options o;

  auto* validate = app.add_subcommand("validate", "Check a model document");
  validate->add_option("FILE", o.file)->required();

  auto* transform_cmd = app.add_subcommand("transform", "Print the confidence network");
  transform_cmd->add_option("FILE", o.file)->required();
  transform_cmd->add_option("--format", o.format)
      ->check(CLI::IsMember({"json", "dot"}))
      ->default_val("json");

  auto* evaluate = app.add_subcommand("evaluate", "Propagate leaf confidences");
  evaluate->add_option("FILE", o.file)->required();
  evaluate->add_option("--set", o.sets, "Transient override ID=G, w:NODE:IDX=P or v:NODE=V");
  evaluate->add_option("--format", o.format)
      ->check(CLI::IsMember({"text", "json"}))
      ->default_val("text");

  auto* tornado_cmd = app.add_subcommand("tornado", "Rank variables by influence");
  tornado_cmd->add_option("FILE", o.file)->required();
  tornado_cmd->add_option("--target", o.target)->required();
  tornado_cmd->add_option("--top", o.top);
  tornado_cmd->add_option("--var", o.variables, "Restrict to these variable keys");
  tornado_cmd->add_option("--format", o.format)
      ->check(CLI::IsMember({"text", "json", "svg"}))
      ->default_val("text");

  auto* export_cmd = app.add_subcommand("export", "Write a Graphviz DOT file");
  export_cmd->add_option("FILE", o.file)->required();
  export_cmd->add_option("--dot", o.dot_out)->required();
  export_cmd->add_flag("--with-values", o.with_values);

  auto* serve = app.add_subcommand("serve", "Start the HTTP service");
  serve->add_option("--port", o.port)->required()->check(CLI::Range(0, 65535));
  serve->add_option("--model", o.file)->required();
  serve->add_option("--host", o.host);
  serve->add_option("--cors-origin", o.cors_origin);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out);
    if (transform_cmd->parsed()) return cmd_transform(o, out);
    if (evaluate->parsed()) return cmd_evaluate(o, out);
    if (tornado_cmd->parsed()) return cmd_tornado(o, out);
    if (export_cmd->parsed()) return cmd_export(o, out);
    if (serve->parsed()) return cmd_serve(o, out);
  } catch (const UsageError& e) {
    err << "argus: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    for (const auto& v : e.violations()) err << "argus: " << format_violation(v) << "\n";
    return kExitDomainError;
  } catch (const Error& e) {
    err << "argus: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitDomainError;
  } catch (const std::exception& e) {
    err << "argus: " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitUsage;
}

}  // namespace argus
