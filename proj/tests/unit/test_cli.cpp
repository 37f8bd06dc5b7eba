// End-to-end tests that drive the installed `newsaudit` binary exactly the
// way a user would: argv in, exit code / stdout / stderr / artifacts out.
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "httplib.h"
#include "newsaudit/corpus.hpp"
#include "support/run_cli.hpp"
#include "support/synthetic.hpp"
#include "support/tmpdir.hpp"

#ifndef NEWSAUDIT_CLI_PATH
#error "NEWSAUDIT_CLI_PATH must point at the built newsaudit binary"
#endif

using namespace newsaudit;
using nlohmann::json;
using testsupport::CliResult;
using testsupport::TempDir;

namespace {

const std::string kCli = NEWSAUDIT_CLI_PATH;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file " << p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

// Corpus + config on disk, ready for CLI runs.
struct CliWorkspace {
  TempDir tmp{"cli"};
  std::filesystem::path config_path;
  std::filesystem::path out;

  explicit CliWorkspace(json extra = json::object()) {
    Corpus c = testsupport::make_biased_corpus(24, 16, 16, 19);
    save_corpus(c, (tmp / "corpus.jsonl").string());
    out = tmp / "out";
    json cfg = {
        {"corpus", {{"main", (tmp / "corpus.jsonl").string()}}},
        {"model", {{"epochs", 120}}},
        {"out_dir", out.string()},
        {"seed", 7},
    };
    for (auto& [k, v] : extra.items()) cfg[k] = v;
    config_path = tmp / "run.json";
    write_file(config_path, cfg.dump(2));
  }

  CliResult run(const std::string& args) {
    return testsupport::run_cli(kCli, args, tmp / "scratch");
  }
  CliResult run_cmd(const std::string& command, const std::string& extra_args = "") {
    return run(command + " --config '" + config_path.string() + "'" +
               (extra_args.empty() ? "" : " " + extra_args));
  }
};

// Minimal chat-completion endpoint on a loopback port.
class LocalLlmServer {
 public:
  // `mode`: "ok" answers every request; "fail" always returns HTTP 500.
  explicit LocalLlmServer(const std::string& mode) {
    server_.Post("/chat/completions",
                 [this, mode](const httplib::Request& req, httplib::Response& res) {
                   ++hits_;
                   {
                     std::lock_guard<std::mutex> lock(mu_);
                     last_auth_ = req.get_header_value("Authorization");
                   }
                   if (mode == "fail") {
                     res.status = 500;
                     res.set_content("oops", "text/plain");
                     return;
                   }
                   json body = json::parse(req.body);
                   std::string content;
                   for (const json& m : body.at("messages"))
                     content += m.at("content").get<std::string>();
                   bool wants_body = content.find("Story summary:") != std::string::npos;
                   json reply;
                   reply["choices"][0]["message"]["content"] =
                       wants_body ? body_text() : title_text();
                   res.set_content(reply.dump(), "application/json");
                 });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    while (!server_.is_running())
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  ~LocalLlmServer() {
    server_.stop();
    thread_.join();
  }

  std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_); }
  int hits() const { return hits_.load(); }
  std::string last_auth() {
    std::lock_guard<std::mutex> lock(mu_);
    return last_auth_;
  }

  static std::string title_text() {
    return "Regional Council Approves Revised Budget After Marathon Session";
  }
  static std::string body_text() {
    return "Officials said the regional council approved the revised budget after "
           "a lengthy public session on Tuesday evening. The measure shifts funding "
           "toward road maintenance and school repairs while trimming several "
           "administrative accounts. Council members debated the package for nearly "
           "four hours before the final vote. Residents who attended the session "
           "praised the added transparency but questioned the timeline for the "
           "proposed repairs. A follow-up hearing is expected next month, where "
           "staff will present detailed schedules for each district.";
  }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> hits_{0};
  std::mutex mu_;
  std::string last_auth_;
};

}  // namespace

TEST_CASE("version and help exit cleanly") {
  CliWorkspace ws;
  CliResult version = ws.run("--version");
  CHECK(version.exit_code == 0);
  CHECK(version.out.find("0.1.0") != std::string::npos);

  CliResult help = ws.run("--help");
  CHECK(help.exit_code == 0);
  for (const char* cmd : {"ingest", "extract", "audit", "train", "eval", "compare",
                          "augment", "generate", "mauve", "kappa"})
    CHECK_MESSAGE(help.out.find(cmd) != std::string::npos, cmd);
}

TEST_CASE("usage problems exit 1") {
  CliWorkspace ws;
  CHECK(ws.run("").exit_code == 1);  // a subcommand is required
  CHECK(ws.run("frobnicate --config x.json").exit_code == 1);
  CliResult no_config = ws.run("ingest");
  CHECK(no_config.exit_code == 1);
  CHECK(no_config.err.find("--config") != std::string::npos);
}

TEST_CASE("config problems exit 1 with a pointed message") {
  CliWorkspace ws;
  CliResult missing = ws.run("ingest --config '" + (ws.tmp / "nope.json").string() + "'");
  CHECK(missing.exit_code == 1);
  CHECK(missing.err.find("nope.json") != std::string::npos);

  write_file(ws.tmp / "broken.json", "{not json");
  CliResult broken = ws.run("ingest --config '" + (ws.tmp / "broken.json").string() + "'");
  CHECK(broken.exit_code == 1);
  CHECK(broken.err.find("error:") != std::string::npos);

  write_file(ws.tmp / "typo.json", R"({"out_dir": "o", "sede": 3})");
  CliResult typo = ws.run("ingest --config '" + (ws.tmp / "typo.json").string() + "'");
  CHECK(typo.exit_code == 1);
  CHECK(typo.err.find("sede") != std::string::npos);
}

TEST_CASE("the full pipeline runs through the binary and reruns identically") {
  CliWorkspace ws;
  const std::vector<std::string> cmds = {"ingest", "extract", "audit",
                                         "train",  "eval",    "compare"};
  for (const std::string& cmd : cmds) {
    CliResult r = ws.run_cmd(cmd);
    CHECK_MESSAGE(r.exit_code == 0, cmd << " stderr: " << r.err);
    CHECK_MESSAGE(r.out.find("wrote ") != std::string::npos, cmd);
  }
  // Every artifact the run promised exists.
  for (const char* f :
       {"corpus.jsonl", "features.csv", "significance.txt", "model_baseline.json",
        "model_debiased.json", "report_baseline.txt", "diff_debias.txt", "run.log"})
    CHECK_MESSAGE(std::filesystem::exists(ws.out / f), f);

  std::map<std::string, std::string> before;
  for (const auto& entry : std::filesystem::directory_iterator(ws.out))
    before[entry.path().filename().string()] = slurp(entry.path());

  for (const std::string& cmd : cmds) CHECK(ws.run_cmd(cmd).exit_code == 0);

  for (const auto& entry : std::filesystem::directory_iterator(ws.out)) {
    std::string name = entry.path().filename().string();
    if (name == "run.log") continue;  // timestamps live here, and only here
    CHECK_MESSAGE(slurp(entry.path()) == before[name], name << " changed on rerun");
  }
  // The log grew instead: two timestamped lines per command.
  std::istringstream log(slurp(ws.out / "run.log"));
  std::size_t lines = 0;
  std::string line;
  while (std::getline(log, line)) ++lines;
  CHECK(lines == cmds.size() * 2);
}

TEST_CASE("stages demanded out of order explain their producer") {
  CliWorkspace ws;
  CliResult r = ws.run_cmd("eval");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("train") != std::string::npos);
  CHECK(r.err.find("missing artifact") != std::string::npos);
}

TEST_CASE("--seed and --out overrides take effect") {
  CliWorkspace ws;
  CliResult r = ws.run_cmd("ingest", "--out '" + (ws.tmp / "alt").string() + "' --seed 31");
  CHECK(r.exit_code == 0);
  std::string snapshot = slurp(ws.tmp / "alt" / "corpus.jsonl");
  CHECK(snapshot.find("\"seed\":31") != std::string::npos);
  CHECK_FALSE(std::filesystem::exists(ws.out / "corpus.jsonl"));
}

TEST_CASE("unwritable output directories exit 2") {
  CliWorkspace ws;
  write_file(ws.tmp / "blocker", "a plain file");
  CliResult r = ws.run_cmd("ingest", "--out '" + (ws.tmp / "blocker" / "sub").string() + "'");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("io error:") != std::string::npos);
}

TEST_CASE("kappa runs standalone through the binary") {
  CliWorkspace ws;
  write_file(ws.tmp / "a.csv", "id,rating\nr1,1\nr2,0\nr3,1\n");
  write_file(ws.tmp / "b.csv", "id,rating\nr1,1\nr2,0\nr3,1\n");
  json cfg = {
      {"kappa",
       {{"annotations_a", (ws.tmp / "a.csv").string()},
        {"annotations_b", (ws.tmp / "b.csv").string()}}},
      {"out_dir", (ws.tmp / "kout").string()},
  };
  write_file(ws.tmp / "kappa.json", cfg.dump());
  CliResult r = ws.run("kappa --config '" + (ws.tmp / "kappa.json").string() + "'");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("kappa.json") != std::string::npos);
  json doc = json::parse(slurp(ws.tmp / "kout" / "kappa.json"));
  CHECK(doc["kappa"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("generate drives a chat-completion endpoint end to end") {
  LocalLlmServer server("ok");
  setenv("NEWSAUDIT_API_KEY", "testkey-123", 1);
  CliWorkspace ws(json{
      {"llm",
       {{"base_url", server.base_url()}, {"max_articles", 2}, {"max_retries", 1}}}});
  REQUIRE(ws.run_cmd("ingest").exit_code == 0);
  CliResult r = ws.run_cmd("generate");
  CHECK_MESSAGE(r.exit_code == 0, r.err);
  CHECK(server.hits() == 4);  // title + body for each of the two seeds
  CHECK(server.last_auth() == "Bearer testkey-123");

  for (const char* f :
       {"corpus_generated.jsonl", "generation_records.json", "generation_review.csv"})
    CHECK_MESSAGE(r.out.find(f) != std::string::npos, f);

  // The generated corpus holds machine-fake twins of the two seed articles.
  std::string text = slurp(ws.out / "corpus_generated.jsonl");
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);  // meta
  std::size_t articles = 0;
  while (std::getline(lines, line)) {
    json a = json::parse(line);
    ++articles;
    CHECK(a["label"] == "fake");
    CHECK(a["source"] == "machine");
    CHECK(a["id"].get<std::string>().rfind("mf-", 0) == 0);
    CHECK(a["title"] == LocalLlmServer::title_text());
  }
  CHECK(articles == 2);

  json records = json::parse(slurp(ws.out / "generation_records.json"));
  REQUIRE(records["records"].size() == 2);
  for (const json& rec : records["records"]) {
    CHECK(rec["accepted"] == true);
    CHECK(rec["template_version"] == "1");
    std::string log_joined;
    for (const json& l : rec["attempt_log"]) log_joined += l.get<std::string>() + "\n";
    CHECK(log_joined.find("status 200") != std::string::npos);
  }
  unsetenv("NEWSAUDIT_API_KEY");
}

TEST_CASE("a missing API key stops generate before any request") {
  LocalLlmServer server("ok");
  unsetenv("NEWSAUDIT_API_KEY");
  CliWorkspace ws(json{{"llm", {{"base_url", server.base_url()}}}});
  REQUIRE(ws.run_cmd("ingest").exit_code == 0);
  CliResult r = ws.run_cmd("generate");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("NEWSAUDIT_API_KEY") != std::string::npos);
  CHECK(server.hits() == 0);
}

TEST_CASE("persistent endpoint failures exit 2 with the attempt log") {
  LocalLlmServer server("fail");
  setenv("NEWSAUDIT_API_KEY", "testkey-123", 1);
  CliWorkspace ws(json{{"llm",
                        {{"base_url", server.base_url()},
                         {"max_articles", 1},
                         {"max_retries", 1},
                         {"backoff_base_seconds", 0.01}}}});
  REQUIRE(ws.run_cmd("ingest").exit_code == 0);
  CliResult r = ws.run_cmd("generate");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("transport error:") != std::string::npos);
  CHECK(r.err.find("status 500") != std::string::npos);
  CHECK(server.hits() == 2);  // first try plus one retry
  unsetenv("NEWSAUDIT_API_KEY");
}
