#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "partsmm/beliefs.hpp"
#include "partsmm/error.hpp"
#include "partsmm/http_source.hpp"

using namespace partsmm;
namespace fs = std::filesystem;

namespace {

// Scripted endpoint: the first `failures` requests get `fail_status`, the rest
// answer with top logprobs for True/False.
class FakeLm {
 public:
  FakeLm() {
    server_.Post("/v1/score", [this](const httplib::Request& req, httplib::Response& res) {
      const int n = ++requests_;
      last_auth_ = req.get_header_value("Authorization");
      if (n <= failures_) {
        res.status = fail_status_;
        if (retry_after_) res.set_header("Retry-After", "0");
        return;
      }
      const auto body = nlohmann::json::parse(req.body);
      const std::string prompt = body.at("prompt");
      nlohmann::json out;
      if (prompt.find("missing") != std::string::npos || omit_tokens_) {
        out["choices"][0]["top_logprobs"] = nlohmann::json::array({{{"token", "Maybe"}, {"logprob", -0.1}}});
      } else {
        out["choices"][0]["top_logprobs"] = nlohmann::json::array(
            {{{"token", "True"}, {"logprob", std::log(0.6)}}, {{"token", "False"}, {"logprob", std::log(0.2)}}});
      }
      res.set_content(out.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeLm() {
    server_.stop();
    thread_.join();
  }

  HttpLmConfig config() const {
    HttpLmConfig c;
    c.url = "http://127.0.0.1:" + std::to_string(port_) + "/v1/score";
    c.scores_pointer = "/choices/0/top_logprobs";
    c.initial_backoff = std::chrono::milliseconds(1);
    c.max_backoff = std::chrono::milliseconds(5);
    c.timeout = std::chrono::seconds(5);
    c.max_attempts = 4;
    return c;
  }

  std::atomic<int> requests_{0};
  int failures_ = 0;
  int fail_status_ = 500;
  bool retry_after_ = false;
  bool omit_tokens_ = false;
  std::string last_auth_;

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

fs::path temp_dir(const std::string& name) {
  auto d = fs::temp_directory_path() / ("partsmm_http_" + name);
  fs::remove_all(d);
  return d;
}

PartsMentalModel kite() {
  PartsMentalModel m;
  m.entity = "kite";
  m.model_id = "k1";
  m.parts = {"sail", "string", "spar"};
  return m;
}

}  // namespace

TEST(ExtractScores, ArrayAndObjectForms) {
  HttpLmConfig c;
  c.scores_pointer = "/scores";
  c.score_kind = "prob";
  const auto a = extract_scores(c, R"({"scores":{"True":0.08,"False":0.02}})");
  ASSERT_TRUE(a.scores);
  EXPECT_NEAR(*confidence_from_scores(a.scores->score_true, a.scores->score_false), 0.8, 1e-12);

  c.score_kind = "logprob";
  c.true_tokens = {"True", " True"};
  const auto b = extract_scores(
      c, R"({"scores":[{"token":"True","logprob":-1.0},{"token":" True","logprob":-2.0},{"token":"False","logprob":-0.5}]})");
  ASSERT_TRUE(b.scores);
  EXPECT_NEAR(b.scores->score_true, std::exp(-1.0) + std::exp(-2.0), 1e-12);
  EXPECT_NEAR(b.scores->score_false, std::exp(-0.5), 1e-12);

  const auto one_side = extract_scores(c, R"({"scores":[{"token":"True","logprob":-1.0}]})");
  ASSERT_TRUE(one_side.scores);
  EXPECT_EQ(one_side.scores->score_false, 0.0);

  const auto none = extract_scores(c, R"({"scores":[{"token":"Maybe","logprob":-1.0}]})");
  EXPECT_FALSE(none.scores);
  EXPECT_FALSE(none.error.empty());
  EXPECT_FALSE(extract_scores(c, "not json").scores);
  EXPECT_FALSE(extract_scores(c, R"({"other":1})").scores);
}

TEST(Config, ParsesAndRejectsInlineKey) {
  const auto c = HttpLmConfig::from_json_text(
      R"({"url":"http://x/y","api_key_env":"LM_KEY","scores_pointer":"/s","initial_backoff_ms":10,"max_attempts":2})");
  EXPECT_EQ(c.api_key_env, "LM_KEY");
  EXPECT_EQ(c.initial_backoff, std::chrono::milliseconds(10));
  EXPECT_EQ(c.max_attempts, 2);
  EXPECT_THROW(HttpLmConfig::from_json_text(R"({"url":"http://x","scores_pointer":"/s","api_key":"secret"})"), Error);
  EXPECT_THROW(HttpLmConfig::from_json_text(R"({"url":"http://x"})"), Error);
}

TEST(HttpSource, ScoresFromEndpoint) {
  FakeLm lm;
  HttpLmSource src(lm.config());
  const double c = src.query("kite", {"sail", Relation::Above, "string"});
  EXPECT_NEAR(c, 0.75, 1e-9);
  EXPECT_EQ(src.network_calls(), 1u);
}

TEST(HttpSource, RetriesServerErrors) {
  FakeLm lm;
  lm.failures_ = 2;
  HttpLmSource src(lm.config());
  const auto r = src.score_prompt("p");
  ASSERT_TRUE(r.scores);
  EXPECT_EQ(r.attempts, 3);
  EXPECT_EQ(lm.requests_, 3);
}

TEST(HttpSource, RetriesRateLimitWithRetryAfter) {
  FakeLm lm;
  lm.failures_ = 1;
  lm.fail_status_ = 429;
  lm.retry_after_ = true;
  HttpLmSource src(lm.config());
  EXPECT_TRUE(src.score_prompt("p").scores);
  EXPECT_EQ(lm.requests_, 2);
}

TEST(HttpSource, GivesUpAfterMaxAttempts) {
  FakeLm lm;
  lm.failures_ = 100;
  HttpLmSource src(lm.config());
  const auto r = src.score_prompt("p");
  EXPECT_FALSE(r.scores);
  EXPECT_EQ(r.attempts, 4);
  EXPECT_NE(r.error.find("500"), std::string::npos);
  EXPECT_EQ(lm.requests_, 4);
}

TEST(HttpSource, ClientErrorsAreNotRetried) {
  FakeLm lm;
  lm.failures_ = 100;
  lm.fail_status_ = 400;
  HttpLmSource src(lm.config());
  EXPECT_FALSE(src.score_prompt("p").scores);
  EXPECT_EQ(lm.requests_, 1);
}

TEST(HttpSource, NetworkErrorIsReported) {
  HttpLmConfig c;
  c.url = "http://127.0.0.1:1/none";
  c.scores_pointer = "/x";
  c.max_attempts = 2;
  c.initial_backoff = std::chrono::milliseconds(1);
  c.timeout = std::chrono::seconds(1);
  HttpLmSource src(c);
  const auto r = src.score_prompt("p");
  EXPECT_FALSE(r.scores);
  EXPECT_EQ(r.attempts, 2);
}

TEST(HttpSource, MissingTokensMakeFailedRecord) {
  FakeLm lm;
  lm.omit_tokens_ = true;
  HttpLmSource src(lm.config());
  PartsMentalModel m = kite();
  m.parts = {"sail", "string"};
  const auto records = probe(src, m);
  ASSERT_EQ(records.size(), 28u);
  for (const auto& r : records) {
    EXPECT_TRUE(r.failed);
    EXPECT_EQ(r.confidence, 0.5);
  }
}

TEST(HttpSource, CacheReplaysWithoutNetwork) {
  FakeLm lm;
  HttpLmConfig c = lm.config();
  c.cache_dir = temp_dir("cache").string();
  c.fanout = 4;
  std::vector<ProbeRecord> first;
  {
    HttpLmSource src(c);
    first = probe(src, kite());
    EXPECT_EQ(src.network_calls(), 84u);
  }
  EXPECT_EQ(std::distance(fs::directory_iterator(c.cache_dir), fs::directory_iterator{}), 84);
  const int before = lm.requests_;
  HttpLmSource again(c);
  const auto second = probe(again, kite());
  EXPECT_EQ(again.network_calls(), 0u);
  EXPECT_EQ(lm.requests_, before);
  ASSERT_EQ(second.size(), first.size());
  for (std::size_t i = 0; i < first.size(); ++i) EXPECT_EQ(to_jsonl(second[i]), to_jsonl(first[i]));
}

TEST(HttpSource, ApiKeyFromEnvironment) {
  FakeLm lm;
  HttpLmConfig c = lm.config();
  c.api_key_env = "PARTSMM_TEST_KEY";
  c.headers["Authorization"] = "Bearer ${API_KEY}";
  ::unsetenv("PARTSMM_TEST_KEY");
  EXPECT_THROW(HttpLmSource{c}, ValidationError);
  ::setenv("PARTSMM_TEST_KEY", "s3cret", 1);
  HttpLmSource src(c);
  EXPECT_TRUE(src.score_prompt("p").scores);
  EXPECT_EQ(lm.last_auth_, "Bearer s3cret");
  ::unsetenv("PARTSMM_TEST_KEY");
}

TEST(RateLimiter, SpacesRequests) {
  RateLimiter limiter(50.0);
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < 6; ++i) limiter.acquire();
  const auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_GE(elapsed, std::chrono::milliseconds(95));
  RateLimiter unlimited(0.0);
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 1000; ++i) unlimited.acquire();
  EXPECT_LT(std::chrono::steady_clock::now() - t0, std::chrono::milliseconds(50));
}
