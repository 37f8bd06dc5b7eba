#include "newsaudit/llmgen/client.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "newsaudit/errors.hpp"
#include "newsaudit/llmgen/sanitize.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace newsaudit::llmgen {

namespace {

using nlohmann::json;

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d649bb133111ebULL;
  return z ^ (z >> 31);
}

double unit_double(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

std::string format_seconds(double s) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << s;
  return os.str();
}

class SystemClock final : public Clock {
 public:
  double now() override {
    auto t = std::chrono::steady_clock::now().time_since_epoch();
    return std::chrono::duration<double>(t).count();
  }
  void sleep_for(double seconds) override {
    if (seconds > 0) std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
  }
};

class HttplibTransport final : public HttpTransport {
 public:
  explicit HttplibTransport(const std::string& base_url) {
    // Split "scheme://host[:port]/prefix" into client origin and path prefix.
    std::size_t scheme_end = base_url.find("://");
    std::size_t path_start = scheme_end == std::string::npos
                                 ? base_url.find('/')
                                 : base_url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
      origin_ = base_url;
    } else {
      origin_ = base_url.substr(0, path_start);
      prefix_ = base_url.substr(path_start);
      while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
    }
  }

  HttpResponse post_json(const std::string& path, const std::string& bearer_token,
                         const std::string& json_body, double timeout_seconds) override {
    httplib::Client client(origin_);
    auto to_duration = [](double s) {
      return std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::duration<double>(s));
    };
    client.set_connection_timeout(to_duration(timeout_seconds));
    client.set_read_timeout(to_duration(timeout_seconds));
    client.set_write_timeout(to_duration(timeout_seconds));
    httplib::Headers headers;
    if (!bearer_token.empty())
      headers.emplace("Authorization", "Bearer " + bearer_token);
    httplib::Result res =
        client.Post(prefix_ + path, headers, json_body, "application/json");
    HttpResponse out;
    if (!res) {
      out.status = 0;
      out.error = httplib::to_string(res.error());
      return out;
    }
    out.status = res->status;
    out.body = res->body;
    return out;
  }

 private:
  std::string origin_;
  std::string prefix_;
};

}  // namespace

void validate_endpoint_config(const LlmEndpointConfig& cfg) {
  std::vector<std::string> problems;
  if (cfg.base_url.empty()) problems.push_back("base_url is empty");
  if (cfg.api_key_env_var.empty()) problems.push_back("api_key_env_var is empty");
  if (cfg.model.empty()) problems.push_back("model is empty");
  if (!(cfg.temperature >= 0.0 && cfg.temperature <= 2.0))
    problems.push_back("temperature must lie in [0,2]");
  if (cfg.max_tokens <= 0) problems.push_back("max_tokens must be > 0");
  if (!(cfg.timeout_seconds > 0.0)) problems.push_back("timeout_seconds must be > 0");
  if (cfg.max_retries < 0) problems.push_back("max_retries must be >= 0");
  if (!(cfg.requests_per_minute > 0.0))
    problems.push_back("requests_per_minute must be > 0");
  if (!(cfg.backoff_base_seconds > 0.0))
    problems.push_back("backoff_base_seconds must be > 0");
  if (!problems.empty()) {
    std::string msg = "invalid endpoint config: ";
    for (std::size_t i = 0; i < problems.size(); ++i) {
      if (i) msg += "; ";
      msg += problems[i];
    }
    throw ValidationError(msg);
  }
}

std::unique_ptr<Clock> make_system_clock() { return std::make_unique<SystemClock>(); }

std::unique_ptr<HttpTransport> make_http_transport(const std::string& base_url) {
  return std::make_unique<HttplibTransport>(base_url);
}

RateLimiter::RateLimiter(double requests_per_minute, Clock& clock)
    : per_minute_(requests_per_minute), clock_(clock) {
  if (!(requests_per_minute > 0.0))
    throw ValidationError("rate limiter requires requests_per_minute > 0");
}

void RateLimiter::acquire() {
  std::unique_lock<std::mutex> lock(mutex_);
  for (;;) {
    const double now = clock_.now();
    while (!stamps_.empty() && now - stamps_.front() >= 60.0) stamps_.pop_front();
    if (stamps_.size() < static_cast<std::size_t>(per_minute_)) {
      stamps_.push_back(now);
      return;
    }
    const double wait = stamps_.front() + 60.0 - now;
    lock.unlock();
    clock_.sleep_for(wait > 0 ? wait : 1e-3);
    lock.lock();
  }
}

GenerationClient::GenerationClient(LlmEndpointConfig cfg, HttpTransport& transport,
                                   Clock& clock, std::uint64_t seed)
    : cfg_(std::move(cfg)),
      transport_(transport),
      clock_(clock),
      limiter_(cfg_.requests_per_minute, clock),
      rng_state_(seed ^ 0xa0761d6478bd642fULL) {
  validate_endpoint_config(cfg_);
  const char* key = std::getenv(cfg_.api_key_env_var.c_str());
  if (key == nullptr || *key == '\0')
    throw ValidationError("API key environment variable '" + cfg_.api_key_env_var +
                          "' is not set");
  api_key_ = key;
}

std::string GenerationClient::complete(const std::string& instruction,
                                       std::string& attempt_log) {
  json request;
  request["model"] = cfg_.model;
  request["temperature"] = cfg_.temperature;
  request["max_tokens"] = cfg_.max_tokens;
  request["messages"] = json::array({json{{"role", "user"}, {"content", instruction}}});
  const std::string body = request.dump();

  for (int attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
    limiter_.acquire();
    HttpResponse res =
        transport_.post_json("/chat/completions", api_key_, body, cfg_.timeout_seconds);
    attempt_log += "attempt " + std::to_string(attempt + 1) + ": ";
    if (res.status == 0)
      attempt_log += "transport failure (" + res.error + ")";
    else
      attempt_log += "status " + std::to_string(res.status);

    if (res.status == 200) {
      attempt_log += "\n";
      try {
        json parsed = json::parse(res.body);
        return parsed.at("choices").at(0).at("message").at("content").get<std::string>();
      } catch (const json::exception& e) {
        throw TransportError(std::string("malformed chat-completion response: ") +
                                 e.what(),
                             attempt_log);
      }
    }
    if (res.status == 401 || res.status == 403) {
      attempt_log += " (auth, not retryable)\n";
      throw TransportError("authentication failed with status " +
                               std::to_string(res.status) + "; check " +
                               cfg_.api_key_env_var,
                           attempt_log);
    }
    const bool retryable =
        res.status == 0 || res.status == 429 || (res.status >= 500 && res.status <= 599);
    if (!retryable) {
      attempt_log += " (not retryable)\n";
      throw TransportError("chat-completion request failed with status " +
                               std::to_string(res.status),
                           attempt_log);
    }
    if (attempt == cfg_.max_retries) {
      attempt_log += " (retries exhausted)\n";
      throw TransportError("retries exhausted after " +
                               std::to_string(cfg_.max_retries + 1) + " attempts",
                           attempt_log);
    }
    // Exponential backoff with seeded jitter: base * 2^attempt * (1 + u).
    const double delay = cfg_.backoff_base_seconds * std::ldexp(1.0, attempt) *
                         (1.0 + unit_double(rng_state_));
    attempt_log += "; retrying in " + format_seconds(delay) + "s\n";
    clock_.sleep_for(delay);
  }
  throw TransportError("unreachable retry state", attempt_log);
}

GenerationRecord GenerationClient::generate(const SmpPrompt& prompt,
                                            const std::string& origin_id) {
  if (origin_id.empty()) throw ValidationError("generate: empty origin_id");
  GenerationRecord record;
  record.origin_id = origin_id;
  record.prompt = prompt;
  record.template_version = prompt.template_version;

  record.attempt_log += "[title]\n";
  record.raw_title = complete(prompt.title_instruction, record.attempt_log);
  record.attempt_log += "[body]\n";
  record.raw_body = complete(prompt.body_instruction, record.attempt_log);

  record.title = sanitize(record.raw_title);
  record.body = sanitize(record.raw_body);
  if (record.title.empty()) {
    record.accepted = false;
    record.rejection_reason = "title empty after sanitization";
  } else if (record.body.empty()) {
    record.accepted = false;
    record.rejection_reason = "body empty after sanitization";
  } else {
    record.accepted = true;
  }
  return record;
}

}  // namespace newsaudit::llmgen
