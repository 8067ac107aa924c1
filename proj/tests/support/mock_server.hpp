#pragma once

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <chrono>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace testsupport {

// In-process stand-in for the compute service. Replies are canned per
// exact decoded code string; every raw request body and content type is
// recorded so tests can assert the wire format byte for byte. A GET
// /count endpoint exposes the request counter.
class MockComputeServer {
public:
    struct Fixture {
        std::string body;
        int status = 200;
        int delay_ms = 0;
    };

    explicit MockComputeServer(const std::string& path_prefix = "") {
        server_.Post(path_prefix + "/service",
                     [this](const httplib::Request& request,
                            httplib::Response& response) {
                         handle(request, response);
                     });
        server_.Get(path_prefix + "/count",
                    [this](const httplib::Request&, httplib::Response& response) {
                        std::lock_guard<std::mutex> lock(mutex_);
                        response.set_content(std::to_string(bodies_.size()),
                                             "text/plain");
                    });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    ~MockComputeServer() {
        server_.stop();
        if (thread_.joinable()) {
            thread_.join();
        }
    }

    MockComputeServer(const MockComputeServer&) = delete;
    MockComputeServer& operator=(const MockComputeServer&) = delete;

    std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

    void set_fixture(const std::string& code, const std::string& body,
                     int status = 200, int delay_ms = 0) {
        std::lock_guard<std::mutex> lock(mutex_);
        fixtures_[code] = {body, status, delay_ms};
    }

    std::vector<std::string> bodies() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return bodies_;
    }

    std::vector<std::string> content_types() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return content_types_;
    }

    std::size_t request_count() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return bodies_.size();
    }

    // Decodes the `code` form field the way a server framework would:
    // the value between "code=" and the next '&', percent-decoded.
    static std::string decode_code_param(const std::string& body) {
        const std::string prefix = "code=";
        if (body.compare(0, prefix.size(), prefix) != 0) {
            return "";
        }
        std::size_t end = body.find('&', prefix.size());
        if (end == std::string::npos) {
            end = body.size();
        }
        std::string out;
        for (std::size_t i = prefix.size(); i < end; ++i) {
            const char c = body[i];
            if (c == '%' && i + 2 < end) {
                out.push_back(static_cast<char>(hex_value(body[i + 1]) * 16 +
                                                hex_value(body[i + 2])));
                i += 2;
            } else if (c == '+') {
                out.push_back(' ');
            } else {
                out.push_back(c);
            }
        }
        return out;
    }

private:
    static int hex_value(char c) {
        if (c >= '0' && c <= '9') {
            return c - '0';
        }
        if (c >= 'a' && c <= 'f') {
            return c - 'a' + 10;
        }
        if (c >= 'A' && c <= 'F') {
            return c - 'A' + 10;
        }
        return 0;
    }

    void handle(const httplib::Request& request, httplib::Response& response) {
        Fixture fixture;
        bool found = false;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            bodies_.push_back(request.body);
            content_types_.push_back(request.get_header_value("Content-Type"));
            const auto it = fixtures_.find(decode_code_param(request.body));
            if (it != fixtures_.end()) {
                fixture = it->second;
                found = true;
            }
        }
        if (!found) {
            response.status = 404;
            response.set_content("no fixture for this code", "text/plain");
            return;
        }
        if (fixture.delay_ms > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(fixture.delay_ms));
        }
        response.status = fixture.status;
        response.set_content(fixture.body, "application/json");
    }

    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    mutable std::mutex mutex_;
    std::map<std::string, Fixture> fixtures_;
    std::vector<std::string> bodies_;
    std::vector<std::string> content_types_;
};

} // namespace testsupport
