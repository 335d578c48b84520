#include <gtest/gtest.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <future>
#include <httplib.h>
#include <json.hpp>
#include <thread>

#include "anita/report.hpp"
#include "anita/service.hpp"
#include "cli.hpp"
#include "corpus.hpp"

extern char** environ;

using namespace anita;
using anita::testing::corpus_text;
using nlohmann::json;

namespace {

std::string body_with(const char* key, const std::string& value) { return json{{key, value}}.dump(); }

}  // namespace

TEST(Handlers, CheckMatchesReportJson) {
  for (const auto& name : anita::testing::all_corpus_files()) {
    std::string proof = corpus_text(name);
    service::Response r = service::handle_check(body_with("proof", proof));
    EXPECT_EQ(r.status, 200) << name;
    EXPECT_EQ(r.body, to_json(check_text(proof))) << name;
  }
}

TEST(Handlers, CheckVerdicts) {
  json j = json::parse(service::handle_check(body_with("proof", corpus_text("transitivity.txt"))).body);
  EXPECT_EQ(j["verdict"], "valid");
  json c = json::parse(service::handle_check(body_with("proof", corpus_text("countermodel_or.txt"))).body);
  EXPECT_EQ(c["countermodel"], json({{"A", "T"}, {"C", "F"}}));
  service::Response bad = service::handle_check(body_with("proof", "garbage"));
  EXPECT_EQ(bad.status, 200);
  EXPECT_EQ(json::parse(bad.body)["verdict"], "parse_error");
}

TEST(Handlers, CheckRejectsMalformedBodies) {
  EXPECT_EQ(service::handle_check(R"({"proof": ""})").status, 400);
  EXPECT_EQ(service::handle_check(R"({"proof": "  \n"})").status, 400);
  EXPECT_EQ(service::handle_check("{").status, 400);
  EXPECT_EQ(service::handle_check("[1,2]").status, 400);
  EXPECT_EQ(service::handle_check("{}").status, 400);
  EXPECT_EQ(service::handle_check(R"({"proof": 3})").status, 400);
  EXPECT_EQ(service::handle_check(R"({"proof": "T A pre", "expect": "maybe"})").status, 400);
  EXPECT_EQ(service::handle_check(R"({"proof": "T A pre", "expected_sequent": "A |-"})").status, 400);
  EXPECT_EQ(service::handle_check(std::string(service::kMaxBodyBytes + 1, ' ')).status, 413);
}

TEST(Handlers, Grading) {
  std::string proof = corpus_text("transitivity.txt");
  json j = json::parse(service::handle_check(json{{"proof", proof}, {"expect", "valid"}}.dump()).body);
  EXPECT_EQ(j["grade_ok"], true);
  json k = json::parse(
      service::handle_check(json{{"proof", proof}, {"expected_sequent", "A->B, A |- C"}}.dump()).body);
  EXPECT_EQ(k["grade_ok"], false);
  json none = json::parse(service::handle_check(body_with("proof", proof)).body);
  EXPECT_FALSE(none.contains("grade_ok"));
}

TEST(Handlers, Latex) {
  service::Response ok = service::handle_latex(body_with("proof", corpus_text("transitivity.txt")));
  EXPECT_EQ(ok.status, 200);
  EXPECT_NE(json::parse(ok.body)["latex"].get<std::string>().find("\\Tree"), std::string::npos);
  service::Response open = service::handle_latex(body_with("proof", corpus_text("transitivity_incomplete.txt")));
  EXPECT_NE(json::parse(open.body)["latex"].get<std::string>().find("\\color{red}"), std::string::npos);
  service::Response garbage = service::handle_latex(body_with("proof", "garbage"));
  EXPECT_EQ(garbage.status, 422);
  EXPECT_EQ(json::parse(garbage.body)["diagnostics"][0]["code"], "PARSE_ERROR");
  EXPECT_EQ(service::handle_latex("nope").status, 400);
}

TEST(Handlers, Prove) {
  json closed = json::parse(service::handle_prove(body_with("sequent", "A->B, B->C, A |- C")).body);
  EXPECT_EQ(closed["result"], "closed");
  EXPECT_EQ(check_text(closed["script"].get<std::string>()).verdict(), "valid");
  json open = json::parse(service::handle_prove(body_with("sequent", "A, A&B->C |- C")).body);
  EXPECT_EQ(open["result"], "open");
  EXPECT_EQ(open["countermodel"], json({{"A", "T"}, {"B", "F"}, {"C", "F"}}));
  EXPECT_EQ(service::handle_prove(body_with("sequent", "Ax H(x) |- H(a)")).status, 422);
  EXPECT_EQ(service::handle_prove(body_with("sequent", "A |- ")).status, 422);
  EXPECT_EQ(service::handle_prove("{}").status, 400);
}

TEST(Handlers, Health) {
  service::Response r = service::handle_health();
  EXPECT_EQ(r.status, 200);
  json j = json::parse(r.body);
  EXPECT_EQ(j["status"], "ok");
  EXPECT_EQ(j["version"], std::string(service::version()));
}

class LiveServer : public ::testing::Test {
 protected:
  void SetUp() override {
    service::Options o;
    o.port = 0;
    server_ = std::make_unique<service::Server>(o);
    ASSERT_TRUE(server_->bind());
    thread_ = std::thread([this] { server_->listen(); });
    server_->wait_until_ready();
  }
  void TearDown() override {
    server_->stop();
    if (thread_.joinable()) thread_.join();
  }
  httplib::Client client() const {
    httplib::Client c("127.0.0.1", server_->port());
    c.set_read_timeout(10, 0);
    return c;
  }

  std::unique_ptr<service::Server> server_;
  std::thread thread_;
};

TEST_F(LiveServer, EndpointsOverHttp) {
  auto c = client();
  auto health = c.Get("/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  EXPECT_EQ(health->get_header_value("Access-Control-Allow-Origin"), "*");
  EXPECT_EQ(health->get_header_value("Content-Type"), "application/json");

  std::string proof = corpus_text("transitivity.txt");
  auto check = c.Post("/check", body_with("proof", proof), "application/json");
  ASSERT_TRUE(check);
  EXPECT_EQ(check->status, 200);
  EXPECT_EQ(check->body, to_json(check_text(proof)));

  auto bad = c.Post("/check", "{oops", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);

  auto latex = c.Post("/latex", body_with("proof", "garbage"), "application/json");
  ASSERT_TRUE(latex);
  EXPECT_EQ(latex->status, 422);

  auto prove = c.Post("/prove", body_with("sequent", "A |- A"), "application/json");
  ASSERT_TRUE(prove);
  EXPECT_EQ(json::parse(prove->body)["result"], "closed");

  auto preflight = c.Options("/check");
  ASSERT_TRUE(preflight);
  EXPECT_EQ(preflight->status, 204);
  EXPECT_NE(preflight->get_header_value("Access-Control-Allow-Methods").find("POST"), std::string::npos);

  auto missing = c.Get("/nothing");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
}

TEST_F(LiveServer, OversizedBodyIs413) {
  auto c = client();
  std::string big = body_with("proof", std::string(service::kMaxBodyBytes + 16, 'A'));
  auto r = c.Post("/check", big, "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 413);
}

TEST_F(LiveServer, ConcurrentIdenticalRequests) {
  std::string body = body_with("proof", corpus_text("countermodel_and.txt"));
  std::vector<std::future<std::string>> futures;
  for (int i = 0; i < 50; ++i) {
    futures.push_back(std::async(std::launch::async, [&] {
      auto c = client();
      auto r = c.Post("/check", body, "application/json");
      return r && r->status == 200 ? r->body : std::string("<failed>");
    }));
  }
  std::string first = futures[0].get();
  EXPECT_EQ(json::parse(first)["verdict"], "countermodel");
  for (std::size_t i = 1; i < futures.size(); ++i) EXPECT_EQ(futures[i].get(), first);
  auto health = client().Get("/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
}

TEST_F(LiveServer, PortInUseFailsToBind) {
  service::Options o;
  o.port = server_->port();
  service::Server second(o);
  EXPECT_FALSE(second.bind());
  std::istringstream in;
  std::ostringstream out, err;
  int status = anita::cli::run({"anita", "serve", "--port", std::to_string(server_->port())}, in, out, err);
  EXPECT_EQ(status, 3);
}

TEST(ServeCommand, EndToEndThroughTheExecutable) {
  int pipefd[2];
  ASSERT_EQ(pipe(pipefd), 0);
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, pipefd[1], STDOUT_FILENO);
  posix_spawn_file_actions_addclose(&actions, pipefd[0]);
  std::string exe = ANITA_CLI_PATH;
  std::vector<char*> argv{exe.data(), const_cast<char*>("serve"), const_cast<char*>("--port"),
                          const_cast<char*>("0"), nullptr};
  pid_t pid = 0;
  ASSERT_EQ(posix_spawn(&pid, exe.c_str(), &actions, nullptr, argv.data(), environ), 0);
  posix_spawn_file_actions_destroy(&actions);
  close(pipefd[1]);

  std::string banner;
  char ch = 0;
  while (read(pipefd[0], &ch, 1) == 1 && ch != '\n') banner += ch;
  close(pipefd[0]);
  auto colon = banner.rfind(':');
  ASSERT_NE(colon, std::string::npos) << banner;
  int port = std::stoi(banner.substr(colon + 1));

  httplib::Client c("127.0.0.1", port);
  auto health = c.Get("/health");
  auto check = c.Post("/check", body_with("proof", corpus_text("transitivity.txt")), "application/json");
  kill(pid, SIGTERM);
  int status = 0;
  waitpid(pid, &status, 0);
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  ASSERT_TRUE(check);
  EXPECT_EQ(json::parse(check->body)["verdict"], "valid");
}
