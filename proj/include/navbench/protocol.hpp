#pragma once

#include <functional>
#include <memory>
#include <string>

#include "navbench/policy.hpp"

namespace navbench {

// Creates a fresh policy for each /reset, keyed by the client's episode id.
using SessionPolicyFactory =
    std::function<std::unique_ptr<PolicyInterface>(const std::string& episode_id)>;

// HTTP/1.1 JSON policy service: GET /health, POST /reset, POST /step.
// Frames travel as base64 PNG. One policy instance per session id.
class PolicyServer {
  public:
    explicit PolicyServer(SessionPolicyFactory factory);
    ~PolicyServer();

    PolicyServer(const PolicyServer&) = delete;
    PolicyServer& operator=(const PolicyServer&) = delete;

    // Binds and serves on a background thread; port 0 picks a free port.
    // Throws when the address cannot be bound.
    void start(const std::string& host, int port);
    void stop();
    bool running() const;
    int port() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Client-side adapter making a served policy usable as a PolicyInterface.
// Requests time out after timeout_seconds and are retried once; a second
// transport failure aborts the episode via PolicyError.
class RemotePolicy : public PolicyInterface {
  public:
    RemotePolicy(const std::string& url, const std::string& episode_id,
                 double timeout_seconds = 30.0);
    ~RemotePolicy() override;

    void reset(const Frame& goal) override;
    Action act(const Frame& observation, bool collided) override;
    bool needs_observation_frames() const override { return true; }

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// True when GET /health answers {"status":"ok"}.
bool probe_health(const std::string& url, double timeout_seconds = 5.0);

}  // namespace navbench
