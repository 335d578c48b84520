#include "anita/service.hpp"

#define CPPHTTPLIB_LISTEN_BACKLOG 128
#include <httplib.h>

#include <json.hpp>

#include "anita/prover.hpp"
#include "anita/report.hpp"

#ifndef ANITA_VERSION
#define ANITA_VERSION "0.0.0"
#endif

namespace anita::service {

using nlohmann::json;

namespace {

Response error(int status, const std::string& message) {
  return Response{status, json{{"error", message}}.dump(2) + "\n"};
}

Response ok(const json& doc, int status = 200) { return Response{status, doc.dump(2) + "\n"}; }

// Parses the body as a JSON object; on failure sets `failure`.
std::optional<json> parse_object(std::string_view body, Response& failure) {
  if (body.size() > kMaxBodyBytes) {
    failure = error(413, "request body exceeds 1 MiB");
    return std::nullopt;
  }
  json doc = json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    failure = error(400, "request body must be a JSON object");
    return std::nullopt;
  }
  return doc;
}

std::optional<std::string> string_field(const json& doc, const char* name, Response& failure, bool required) {
  auto it = doc.find(name);
  if (it == doc.end() || it->is_null()) {
    if (required) failure = error(400, std::string("missing field '") + name + "'");
    return std::nullopt;
  }
  if (!it->is_string()) {
    failure = error(400, std::string("field '") + name + "' must be a string");
    return std::nullopt;
  }
  return it->get<std::string>();
}

// Extracts a nonempty "proof" field.
std::optional<std::string> proof_field(std::string_view body, Response& failure, std::optional<json>* doc_out) {
  auto doc = parse_object(body, failure);
  if (!doc) return std::nullopt;
  auto proof = string_field(*doc, "proof", failure, true);
  if (!proof) return std::nullopt;
  if (proof->find_first_not_of(" \t\r\n") == std::string::npos) {
    failure = error(400, "field 'proof' must not be empty");
    return std::nullopt;
  }
  if (doc_out) *doc_out = std::move(doc);
  return proof;
}

}  // namespace

std::string_view version() { return ANITA_VERSION; }

Response handle_check(std::string_view body) {
  Response failure;
  std::optional<json> doc;
  auto proof = proof_field(body, failure, &doc);
  if (!proof) return failure;

  Grading grading;
  auto expect = string_field(*doc, "expect", failure, false);
  if (failure.status != 200) return failure;
  if (expect) {
    grading.expect = parse_expectation(*expect);
    if (!grading.expect) return error(400, "field 'expect' must be \"valid\" or \"countermodel\"");
  }
  auto expected_sequent = string_field(*doc, "expected_sequent", failure, false);
  if (failure.status != 200) return failure;
  if (expected_sequent) {
    try {
      grading.sequent = parse_sequent(*expected_sequent);
    } catch (const ParseError& e) {
      return error(400, std::string("field 'expected_sequent': ") + e.what());
    }
  }

  CheckOutcome outcome = check_text(*proof);
  JsonOptions options;
  if (grading.active()) options.grade_ok = grade(outcome, grading);
  return Response{200, to_json(outcome, options)};
}

Response handle_latex(std::string_view body) {
  Response failure;
  auto proof = proof_field(body, failure, nullptr);
  if (!proof) return failure;
  CheckOutcome outcome = check_text(*proof);
  if (outcome.parse_error) return Response{422, to_json(outcome)};
  return ok(json{{"latex", latex_for(outcome)}});
}

Response handle_prove(std::string_view body) {
  Response failure;
  auto doc = parse_object(body, failure);
  if (!doc) return failure;
  auto text = string_field(*doc, "sequent", failure, true);
  if (!text) return failure;
  try {
    Sequent seq = parse_sequent(*text);
    ProverResult result = prove(seq);
    if (result.kind == ProverResult::Kind::Closed)
      return ok(json{{"result", "closed"}, {"script", serialize_proof(*result.script)}});
    json model = json::object();
    for (const auto& [atom, sign] : result.model->assignments) model[atom] = std::string(1, sign_char(sign));
    return ok(json{{"result", "open"}, {"countermodel", model}});
  } catch (const ParseError& e) {
    return error(422, std::string("sequent: ") + e.what());
  } catch (const NotPropositional& e) {
    return error(422, e.what());
  } catch (const BudgetExceeded& e) {
    return error(422, e.what());
  }
}

Response handle_health() { return ok(json{{"status", "ok"}, {"version", std::string(version())}}); }

// ---------- HTTP binding ----------

struct Server::Impl {
  Options options;
  httplib::Server http;
  int port = -1;
};

namespace {

bool is_loopback(const std::string& addr) {
  return addr == "127.0.0.1" || addr == "localhost" || addr == "::1" || addr.rfind("127.", 0) == 0;
}

}  // namespace

Server::Server(Options options) : impl_(std::make_unique<Impl>()) {
  impl_->options = std::move(options);
  auto& http = impl_->http;
  std::string origin = impl_->options.cors_origin;
  if (origin.empty() && is_loopback(impl_->options.bind)) origin = "*";

  http.set_payload_max_length(kMaxBodyBytes);
  http.new_task_queue = [] { return new httplib::ThreadPool(32); };
  http.set_keep_alive_timeout(2);
  http.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  if (!origin.empty()) {
    http.set_default_headers({{"Access-Control-Allow-Origin", origin},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  }

  auto bind_route = [&http](const char* path, Response (*handler)(std::string_view)) {
    http.Post(path, [handler](const httplib::Request& req, httplib::Response& res) {
      Response r = handler(req.body);
      res.status = r.status;
      res.set_content(r.body, "application/json");
    });
  };
  bind_route("/check", &handle_check);
  bind_route("/latex", &handle_latex);
  bind_route("/prove", &handle_prove);
  http.Get("/health", [](const httplib::Request&, httplib::Response& res) {
    Response r = handle_health();
    res.status = r.status;
    res.set_content(r.body, "application/json");
  });
  http.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

Server::~Server() { stop(); }

bool Server::bind() {
  if (impl_->options.port == 0) {
    impl_->port = impl_->http.bind_to_any_port(impl_->options.bind);
    return impl_->port > 0;
  }
  if (!impl_->http.bind_to_port(impl_->options.bind, impl_->options.port)) return false;
  impl_->port = impl_->options.port;
  return true;
}

int Server::port() const { return impl_->port; }

void Server::listen() { impl_->http.listen_after_bind(); }

void Server::stop() {
  if (impl_->http.is_running()) impl_->http.stop();
}

void Server::wait_until_ready() const { impl_->http.wait_until_ready(); }

}  // namespace anita::service
