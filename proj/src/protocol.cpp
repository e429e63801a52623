#include "navbench/protocol.hpp"

#include <mutex>
#include <thread>
#include <unordered_map>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "navbench/errors.hpp"
#include "navbench/png_io.hpp"

namespace navbench {

namespace {

using nlohmann::json;

void reply_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, int status, const std::string& message) {
    reply_json(res, status, json{{"error", message}});
}

json parse_body(const httplib::Request& req) {
    try {
        return json::parse(req.body);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON body: ") + e.what());
    }
}

template <typename T>
T body_field(const json& body, const char* field) {
    const auto it = body.find(field);
    if (it == body.end()) throw ParseError(std::string("missing field '") + field + "'");
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw ParseError(std::string("field '") + field + "' has wrong type");
    }
}

Frame frame_from_base64_png(const std::string& b64) {
    return image_to_frame(decode_png(base64_decode(b64)));
}

void set_timeouts(httplib::Client& cli, double seconds) {
    const auto sec = static_cast<time_t>(seconds);
    const auto usec = static_cast<time_t>((seconds - static_cast<double>(sec)) * 1e6);
    cli.set_connection_timeout(sec, usec);
    cli.set_read_timeout(sec, usec);
    cli.set_write_timeout(sec, usec);
}

}  // namespace

struct PolicyServer::Impl {
    SessionPolicyFactory factory;
    httplib::Server server;
    std::thread thread;
    int bound_port = 0;

    // One lock serializes session creation and stepping; sessions are
    // handled sequentially, matching the simulator's usage.
    std::mutex mutex;
    std::unordered_map<std::string, std::unique_ptr<PolicyInterface>> sessions;

    explicit Impl(SessionPolicyFactory f) : factory(std::move(f)) {
        server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
            reply_json(res, 200, json{{"status", "ok"}});
        });

        server.Post("/reset", [this](const httplib::Request& req, httplib::Response& res) {
            try {
                const json body = parse_body(req);
                const auto session = body_field<std::string>(body, "session");
                const auto goal_b64 = body_field<std::string>(body, "goal");
                const auto episode_id = body_field<std::string>(body, "episode_id");
                const Frame goal = frame_from_base64_png(goal_b64);

                auto policy = factory(episode_id);
                if (!policy) throw DomainError("no policy for episode '" + episode_id + "'");
                policy->reset(goal);

                std::lock_guard<std::mutex> lock(mutex);
                sessions[session] = std::move(policy);  // clears prior session state
                reply_json(res, 200, json{{"ok", true}});
            } catch (const ParseError& e) {
                reply_error(res, 400, e.what());
            } catch (const std::exception& e) {
                reply_error(res, 500, e.what());
            }
        });

        server.Post("/step", [this](const httplib::Request& req, httplib::Response& res) {
            try {
                const json body = parse_body(req);
                const auto session = body_field<std::string>(body, "session");
                const auto rgb_b64 = body_field<std::string>(body, "rgb");
                const bool collided = body_field<bool>(body, "collided");
                const Frame observation = frame_from_base64_png(rgb_b64);

                std::lock_guard<std::mutex> lock(mutex);
                const auto it = sessions.find(session);
                if (it == sessions.end()) {
                    reply_error(res, 409, "session not initialized");
                    return;
                }
                const Action action = it->second->act(observation, collided);
                reply_json(res, 200, json{{"action", to_string(action)}});
            } catch (const ParseError& e) {
                reply_error(res, 400, e.what());
            } catch (const std::exception& e) {
                reply_error(res, 500, e.what());
            }
        });
    }
};

PolicyServer::PolicyServer(SessionPolicyFactory factory)
    : impl_(std::make_unique<Impl>(std::move(factory))) {}

PolicyServer::~PolicyServer() { stop(); }

void PolicyServer::start(const std::string& host, int port) {
    if (impl_->thread.joinable()) throw DomainError("policy server already running");
    if (port == 0) {
        impl_->bound_port = impl_->server.bind_to_any_port(host);
        if (impl_->bound_port < 0)
            throw DomainError("policy server: cannot bind to " + host);
    } else {
        if (!impl_->server.bind_to_port(host, port))
            throw DomainError("policy server: cannot bind to " + host + ":" +
                              std::to_string(port));
        impl_->bound_port = port;
    }
    impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
}

void PolicyServer::stop() {
    if (!impl_->thread.joinable()) return;
    impl_->server.stop();
    impl_->thread.join();
}

bool PolicyServer::running() const { return impl_->server.is_running(); }

int PolicyServer::port() const { return impl_->bound_port; }

struct RemotePolicy::Impl {
    std::string url;
    std::string session;
    std::string episode_id;
    httplib::Client client;

    Impl(const std::string& base_url, const std::string& episode, double timeout_seconds)
        : url(base_url), session("ep-" + episode), episode_id(episode), client(base_url) {
        set_timeouts(client, timeout_seconds);
        client.set_keep_alive(true);
    }

    json post_json(const char* path, const json& body) {
        const std::string payload = body.dump();
        httplib::Result result;
        for (int attempt = 0; attempt < 2; ++attempt) {
            result = client.Post(path, payload, "application/json");
            if (result) break;  // transport-level failures only are retried
        }
        if (!result)
            throw PolicyError("remote policy: no response from " + url + path + " after retry (" +
                              httplib::to_string(result.error()) + ")");

        json parsed;
        try {
            parsed = json::parse(result->body);
        } catch (const json::exception&) {
            throw ProtocolError("remote policy: non-JSON response from " + url + path);
        }
        if (result->status != 200) {
            std::string message = parsed.contains("error") && parsed["error"].is_string()
                                      ? parsed["error"].get<std::string>()
                                      : result->body;
            throw PolicyError("remote policy: HTTP " + std::to_string(result->status) +
                              " from " + url + path + ": " + message);
        }
        return parsed;
    }
};

RemotePolicy::RemotePolicy(const std::string& url, const std::string& episode_id,
                           double timeout_seconds)
    : impl_(std::make_unique<Impl>(url, episode_id, timeout_seconds)) {}

RemotePolicy::~RemotePolicy() = default;

void RemotePolicy::reset(const Frame& goal) {
    const json body{{"session", impl_->session},
                    {"goal", base64_encode(encode_png(frame_to_image(goal)))},
                    {"episode_id", impl_->episode_id}};
    const json reply = impl_->post_json("/reset", body);
    if (!reply.contains("ok") || reply["ok"] != true)
        throw ProtocolError("remote policy: /reset did not acknowledge with ok=true");
}

Action RemotePolicy::act(const Frame& observation, bool collided) {
    const json body{{"session", impl_->session},
                    {"rgb", base64_encode(encode_png(frame_to_image(observation)))},
                    {"collided", collided}};
    const json reply = impl_->post_json("/step", body);
    if (!reply.contains("action") || !reply["action"].is_string())
        throw ProtocolError("remote policy: /step response lacks an action string");
    return action_from_string(reply["action"].get<std::string>());
}

bool probe_health(const std::string& url, double timeout_seconds) {
    httplib::Client client(url);
    set_timeouts(client, timeout_seconds);
    const auto result = client.Get("/health");
    if (!result || result->status != 200) return false;
    try {
        const json body = json::parse(result->body);
        return body.contains("status") && body["status"] == "ok";
    } catch (const json::exception&) {
        return false;
    }
}

}  // namespace navbench
