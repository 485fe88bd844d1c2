#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "partsmm/beliefs.hpp"
#include "partsmm/ontology.hpp"

namespace partsmm {

/// Endpoint description loaded from a JSON file. Example:
///
///   {
///     "url": "https://host/v1/completions",
///     "api_key_env": "LM_API_KEY",
///     "headers": {"Authorization": "Bearer ${API_KEY}"},
///     "request": {"prompt": "${PROMPT}", "max_tokens": 1, "logprobs": 5},
///     "scores_pointer": "/choices/0/logprobs/top_logprobs/0",
///     "score_kind": "logprob",
///     "true_tokens": ["True", " True"],
///     "false_tokens": ["False", " False"]
///   }
///
/// The value at scores_pointer is either an object {token: score} or an array
/// of objects carrying token_key and score_key. Scores of all listed tokens
/// are summed per side (after exp() for logprobs).
struct HttpLmConfig {
  std::string url;
  std::string api_key_env;
  std::map<std::string, std::string> headers;
  std::string request_template = R"({"prompt":"${PROMPT}"})";
  std::string scores_pointer;
  std::string token_key = "token";
  std::string score_key = "logprob";
  std::string score_kind = "logprob";
  std::vector<std::string> true_tokens{"True"};
  std::vector<std::string> false_tokens{"False"};

  int max_attempts = 5;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::milliseconds max_backoff{30000};
  double backoff_multiplier = 2.0;
  std::chrono::seconds timeout{60};
  std::size_t fanout = 4;
  double requests_per_second = 0.0;  // 0 = unlimited
  std::string cache_dir;             // empty = no cache

  static HttpLmConfig from_json_text(const std::string& text);
  static HttpLmConfig load(const std::string& path);
};

/// Extracted (true, false) scores from a response body; nullopt scores with
/// an error message when neither side is present.
ScoreResult extract_scores(const HttpLmConfig& config, const std::string& body);

/// Minimum-interval limiter shared by all request threads.
class RateLimiter {
 public:
  explicit RateLimiter(double per_second);
  void acquire();

 private:
  std::mutex mu_;
  std::chrono::steady_clock::duration interval_{};
  std::chrono::steady_clock::time_point next_{};
};

/// Live LM belief source. Requests are built from the endpoint templates and
/// the statement's surface form; responses are cached on disk by
/// sha256(url, prompt), so repeated probes make no network calls.
class HttpLmSource : public BeliefSource {
 public:
  explicit HttpLmSource(HttpLmConfig config, PhraseTable phrases = PhraseTable::builtin());

  std::string name() const override { return "http:" + config_.url; }
  ScoreResult score(std::string_view entity, const Statement& s) override;
  std::vector<ScoreResult> score_batch(std::string_view entity, std::span<const Statement> batch) override;

  ScoreResult score_prompt(const std::string& prompt);
  std::uint64_t network_calls() const { return network_calls_; }

 private:
  struct Response {
    int status = 0;
    std::string body;
    std::string timestamp;
    std::string error;
    int attempts = 1;
  };
  std::string cache_path(const std::string& prompt) const;
  bool read_cache(const std::string& prompt, Response& out) const;
  void write_cache(const std::string& prompt, const Response& r);
  Response fetch(const std::string& prompt);
  std::string request_body(const std::string& prompt) const;

  HttpLmConfig config_;
  PhraseTable phrases_;
  std::string api_key_;
  std::string scheme_host_;
  std::string path_;
  RateLimiter limiter_;
  std::mutex cache_mu_;
  std::atomic<std::uint64_t> network_calls_{0};
};

}  // namespace partsmm
