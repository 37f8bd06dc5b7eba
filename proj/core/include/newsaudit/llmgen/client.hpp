#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "newsaudit/llmgen/prompts.hpp"

namespace newsaudit::llmgen {

struct LlmEndpointConfig {
  std::string base_url;  // e.g. "http://localhost:8099/v1"
  std::string api_key_env_var = "NEWSAUDIT_API_KEY";
  std::string model = "gpt-3.5-turbo";
  double temperature = 0.7;          // must lie in [0, 2]
  int max_tokens = 1024;             // > 0
  double timeout_seconds = 30.0;     // > 0
  int max_retries = 3;               // >= 0 additional attempts after the first
  double requests_per_minute = 60.0;  // > 0
  double backoff_base_seconds = 0.5;  // first retry delay before jitter
};

// Throws ValidationError describing every violated bound.
void validate_endpoint_config(const LlmEndpointConfig& cfg);

// Outcome of one two-call generation job.
struct GenerationRecord {
  std::string origin_id;   // seed article id
  SmpPrompt prompt;        // the prompt used
  std::string raw_title;   // unmodified endpoint outputs
  std::string raw_body;
  std::string title;       // sanitized outputs
  std::string body;
  bool accepted = false;   // accepted => sanitized outputs pass all filters
  std::optional<std::string> rejection_reason;
  std::string template_version;
  std::string attempt_log;  // one line per HTTP attempt across both calls
};

// Injectable time source so retry/backoff and rate limiting are testable
// without real sleeping.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual double now() = 0;  // monotonic seconds
  virtual void sleep_for(double seconds) = 0;
};

// steady_clock-backed implementation used by the CLI.
std::unique_ptr<Clock> make_system_clock();

// Sliding-window limiter: at most requests_per_minute acquisitions inside
// any 60-second window of the injected clock. acquire() blocks (by sleeping
// on the clock) until a slot frees. Thread-safe.
class RateLimiter {
 public:
  RateLimiter(double requests_per_minute, Clock& clock);
  void acquire();

 private:
  double per_minute_;
  Clock& clock_;
  std::deque<double> stamps_;
  std::mutex mutex_;
};

struct HttpResponse {
  int status = 0;  // 0 = transport-level failure (connect/timeout)
  std::string body;
  std::string error;  // transport failure detail when status == 0
};

// Transport seam: production uses the bundled HTTP client, tests inject a
// scripted fake.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  // POSTs JSON to {base_url}{path} with Authorization: Bearer <token>.
  virtual HttpResponse post_json(const std::string& path, const std::string& bearer_token,
                                 const std::string& json_body, double timeout_seconds) = 0;
};

// HTTP(S) implementation for the configured base_url.
std::unique_ptr<HttpTransport> make_http_transport(const std::string& base_url);

// Runs generation jobs against a chat-completion endpoint: one POST for the
// title instruction, one for the body instruction. Retryable statuses
// (429, 5xx, transport failures) back off exponentially with seeded jitter
// up to max_retries extra attempts; 401/403 fail immediately. Exhausted
// retries throw TransportError carrying the attempt log. The API key is read
// from cfg.api_key_env_var at construction (missing -> ValidationError).
class GenerationClient {
 public:
  GenerationClient(LlmEndpointConfig cfg, HttpTransport& transport, Clock& clock,
                   std::uint64_t seed = 0);

  // Both completions plus sanitization; never throws for content-level
  // rejection (record.accepted = false instead).
  GenerationRecord generate(const SmpPrompt& prompt, const std::string& origin_id);

 private:
  std::string complete(const std::string& instruction, std::string& attempt_log);

  LlmEndpointConfig cfg_;
  HttpTransport& transport_;
  Clock& clock_;
  RateLimiter limiter_;
  std::uint64_t rng_state_;
  std::string api_key_;
};

}  // namespace newsaudit::llmgen
