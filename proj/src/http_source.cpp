#include "partsmm/http_source.hpp"

#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "partsmm/error.hpp"
#include "partsmm/hash.hpp"
#include "partsmm/parallel.hpp"

namespace partsmm {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string replace_all(std::string s, std::string_view from, std::string_view to) {
  for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size()) {
    s.replace(pos, from.size(), to);
  }
  return s;
}

// Substitutes inside string leaves only, so the prompt is JSON-escaped.
void substitute(json& j, std::string_view key, const std::string& value) {
  if (j.is_string()) {
    j = replace_all(j.get<std::string>(), key, value);
  } else if (j.is_structured()) {
    for (auto& child : j) substitute(child, key, value);
  }
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool retryable(int status) { return status == 429 || status >= 500; }

std::vector<std::string> string_list(const json& j, const char* key, std::vector<std::string> fallback) {
  if (!j.contains(key)) return fallback;
  return j.at(key).get<std::vector<std::string>>();
}

}  // namespace

HttpLmConfig HttpLmConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("endpoint config: ") + e.what());
  }
  HttpLmConfig c;
  try {
    c.url = j.at("url").get<std::string>();
    c.api_key_env = j.value("api_key_env", std::string());
    if (j.contains("headers")) c.headers = j.at("headers").get<std::map<std::string, std::string>>();
    if (j.contains("request")) {
      const json& r = j.at("request");
      c.request_template = r.is_string() ? r.get<std::string>() : r.dump();
    }
    c.scores_pointer = j.value("scores_pointer", std::string());
    c.token_key = j.value("token_key", c.token_key);
    c.score_key = j.value("score_key", c.score_key);
    c.score_kind = j.value("score_kind", c.score_kind);
    c.true_tokens = string_list(j, "true_tokens", c.true_tokens);
    c.false_tokens = string_list(j, "false_tokens", c.false_tokens);
    c.max_attempts = j.value("max_attempts", c.max_attempts);
    c.initial_backoff = std::chrono::milliseconds(j.value("initial_backoff_ms", c.initial_backoff.count()));
    c.max_backoff = std::chrono::milliseconds(j.value("max_backoff_ms", c.max_backoff.count()));
    c.backoff_multiplier = j.value("backoff_multiplier", c.backoff_multiplier);
    c.timeout = std::chrono::seconds(j.value("timeout_secs", c.timeout.count()));
    c.fanout = j.value("fanout", c.fanout);
    c.requests_per_second = j.value("requests_per_second", c.requests_per_second);
    c.cache_dir = j.value("cache_dir", std::string());
  } catch (const json::exception& e) {
    throw ValidationError(std::string("endpoint config: ") + e.what());
  }
  if (j.contains("api_key")) {
    throw ValidationError("endpoint config must not contain api_key; name an environment variable in api_key_env");
  }
  if (c.score_kind != "logprob" && c.score_kind != "prob") {
    throw ValidationError("endpoint config: score_kind must be logprob or prob, got " + c.score_kind);
  }
  if (c.max_attempts < 1) throw ValidationError("endpoint config: max_attempts must be >= 1");
  if (c.scores_pointer.empty()) throw ValidationError("endpoint config: scores_pointer is required");
  return c;
}

HttpLmConfig HttpLmConfig::load(const std::string& path) {
  HttpLmConfig c = from_json_text(read_file(path));
  if (!c.cache_dir.empty() && fs::path(c.cache_dir).is_relative()) {
    c.cache_dir = (fs::path(path).parent_path() / c.cache_dir).string();
  }
  return c;
}

ScoreResult extract_scores(const HttpLmConfig& config, const std::string& body) {
  ScoreResult out;
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error&) {
    out.error = "response is not JSON";
    return out;
  }
  const json* node = nullptr;
  try {
    node = &j.at(json::json_pointer(config.scores_pointer));
  } catch (const json::exception&) {
    out.error = "response has nothing at " + config.scores_pointer;
    return out;
  }

  std::map<std::string, double> table;
  if (node->is_object()) {
    for (auto it = node->begin(); it != node->end(); ++it) {
      if (it.value().is_number()) table[it.key()] = it.value().get<double>();
    }
  } else if (node->is_array()) {
    for (const auto& e : *node) {
      if (!e.is_object() || !e.contains(config.token_key) || !e.contains(config.score_key)) continue;
      const auto& t = e.at(config.token_key);
      const auto& s = e.at(config.score_key);
      if (t.is_string() && s.is_number()) table[t.get<std::string>()] = s.get<double>();
    }
  }

  auto side = [&](const std::vector<std::string>& tokens) -> std::optional<double> {
    std::optional<double> total;
    for (const auto& tok : tokens) {
      auto it = table.find(tok);
      if (it == table.end()) continue;
      const double v = config.score_kind == "logprob" ? std::exp(it->second) : it->second;
      total = total.value_or(0.0) + v;
    }
    return total;
  };
  const auto st = side(config.true_tokens);
  const auto sf = side(config.false_tokens);
  if (!st && !sf) {
    out.error = "no score for either answer token";
    return out;
  }
  // A token outside the returned top-k has negligible mass.
  out.scores = Scores{st.value_or(0.0), sf.value_or(0.0)};
  return out;
}

RateLimiter::RateLimiter(double per_second) {
  if (per_second > 0.0) {
    interval_ = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(1.0 / per_second));
  }
}

void RateLimiter::acquire() {
  if (interval_ == std::chrono::steady_clock::duration::zero()) return;
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard lock(mu_);
    const auto now = std::chrono::steady_clock::now();
    slot = std::max(now, next_);
    next_ = slot + interval_;
  }
  std::this_thread::sleep_until(slot);
}

HttpLmSource::HttpLmSource(HttpLmConfig config, PhraseTable phrases)
    : config_(std::move(config)), phrases_(std::move(phrases)), limiter_(config_.requests_per_second) {
  if (!config_.api_key_env.empty()) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (key == nullptr || *key == '\0') {
      throw ValidationError("environment variable " + config_.api_key_env + " (API key) is not set");
    }
    api_key_ = key;
  }
  const auto scheme = config_.url.find("://");
  if (scheme == std::string::npos) throw ValidationError("endpoint url needs a scheme: " + config_.url);
  const auto slash = config_.url.find('/', scheme + 3);
  scheme_host_ = config_.url.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : config_.url.substr(slash);
  request_body("");  // validates the template early
}

std::string HttpLmSource::request_body(const std::string& prompt) const {
  json j;
  try {
    j = json::parse(config_.request_template);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("endpoint request template: ") + e.what());
  }
  substitute(j, "${PROMPT}", prompt);
  return j.dump();
}

std::string HttpLmSource::cache_path(const std::string& prompt) const {
  return (fs::path(config_.cache_dir) / (sha256_hex(config_.url + '\n' + prompt) + ".json")).string();
}

bool HttpLmSource::read_cache(const std::string& prompt, Response& out) const {
  if (config_.cache_dir.empty()) return false;
  std::ifstream in(cache_path(prompt), std::ios::binary);
  if (!in) return false;
  try {
    const json j = json::parse(in);
    if (j.at("url") != config_.url || j.at("prompt") != prompt) return false;
    out.status = j.at("status").get<int>();
    out.body = j.at("body").get<std::string>();
    out.timestamp = j.at("timestamp").get<std::string>();
    out.attempts = j.value("attempts", 1);
    return true;
  } catch (const json::exception&) {
    return false;  // torn or foreign file: refetch and overwrite
  }
}

void HttpLmSource::write_cache(const std::string& prompt, const Response& r) {
  if (config_.cache_dir.empty()) return;
  nlohmann::ordered_json j;
  j["url"] = config_.url;
  j["prompt"] = prompt;
  j["status"] = r.status;
  j["timestamp"] = r.timestamp;
  j["attempts"] = r.attempts;
  j["body"] = r.body;
  const std::string path = cache_path(prompt);
  std::lock_guard lock(cache_mu_);
  fs::create_directories(config_.cache_dir);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << j.dump();
  }
  fs::rename(tmp, path);
}

HttpLmSource::Response HttpLmSource::fetch(const std::string& prompt) {
  httplib::Client client(scheme_host_);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_write_timeout(config_.timeout);
  httplib::Headers headers;
  for (const auto& [k, v] : config_.headers) headers.emplace(k, replace_all(v, "${API_KEY}", api_key_));
  const std::string body = request_body(prompt);

  Response r;
  auto backoff = config_.initial_backoff;
  for (r.attempts = 1;; ++r.attempts) {
    limiter_.acquire();
    ++network_calls_;
    auto res = client.Post(path_, headers, body, "application/json");
    std::chrono::milliseconds wait = backoff;
    if (!res) {
      r.status = 0;
      r.error = "network error: " + httplib::to_string(res.error());
    } else {
      r.status = res->status;
      r.body = res->body;
      r.timestamp = utc_now();
      if (res->status >= 200 && res->status < 300) {
        r.error.clear();
        return r;
      }
      r.error = "HTTP " + std::to_string(res->status);
      if (!retryable(res->status)) return r;
      if (res->has_header("Retry-After")) {
        try {
          wait = std::max(wait, std::chrono::milliseconds(1000 * std::stol(res->get_header_value("Retry-After"))));
        } catch (const std::exception&) {
        }
      }
    }
    if (r.attempts >= config_.max_attempts) return r;
    std::this_thread::sleep_for(std::min(wait, config_.max_backoff));
    backoff = std::chrono::milliseconds(
        static_cast<std::int64_t>(static_cast<double>(backoff.count()) * config_.backoff_multiplier));
  }
}

ScoreResult HttpLmSource::score_prompt(const std::string& prompt) {
  Response resp;
  if (!read_cache(prompt, resp)) {
    resp = fetch(prompt);
    if (!resp.error.empty()) {
      ScoreResult failed;
      failed.error = resp.error;
      failed.attempts = resp.attempts;
      failed.timestamp = resp.timestamp;
      return failed;
    }
    write_cache(prompt, resp);
  }
  ScoreResult r = extract_scores(config_, resp.body);
  r.timestamp = resp.timestamp;
  r.attempts = resp.attempts;
  return r;
}

ScoreResult HttpLmSource::score(std::string_view entity, const Statement& s) {
  return score_prompt(surface_form(entity, s, phrases_));
}

std::vector<ScoreResult> HttpLmSource::score_batch(std::string_view entity, std::span<const Statement> batch) {
  std::vector<ScoreResult> out(batch.size());
  parallel_for(batch.size(), config_.fanout, [&](std::size_t i) { out[i] = score(entity, batch[i]); });
  return out;
}

}  // namespace partsmm
