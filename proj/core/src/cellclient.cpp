#include "sagecell/cellclient.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <json.hpp>

#include "sagecell/errors.hpp"

namespace sagecell {

namespace {

std::string percent_encode(std::string_view text) {
    static constexpr char hex[] = "0123456789ABCDEF";
    std::string out;
    out.reserve(text.size() * 3 / 2);
    for (char c : text) {
        const auto uc = static_cast<unsigned char>(c);
        const bool unreserved = (uc >= 'A' && uc <= 'Z') || (uc >= 'a' && uc <= 'z') ||
                                (uc >= '0' && uc <= '9') || uc == '-' || uc == '_' ||
                                uc == '.' || uc == '~';
        if (unreserved) {
            out.push_back(c);
        } else {
            out.push_back('%');
            out.push_back(hex[uc >> 4]);
            out.push_back(hex[uc & 0x0F]);
        }
    }
    return out;
}

std::string form_body(std::string_view code) {
    return "code=" + percent_encode(code) + "&accepted_tos=true";
}

// Splits "scheme://host[:port][/prefix]" into the client base and the
// path prefix, so a service mounted under a subpath still works.
std::pair<std::string, std::string> split_server_url(std::string_view url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string_view::npos) {
        throw config_error("server_url: must be an absolute URL");
    }
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string_view::npos) {
        return {std::string(url), std::string()};
    }
    return {std::string(url.substr(0, path_start)),
            std::string(url.substr(path_start))};
}

} // namespace

ExecutionResult execute_code(std::string_view code, std::string_view server_url,
                             std::chrono::milliseconds timeout) {
    if (timeout <= std::chrono::milliseconds::zero()) {
        throw contract_error("execute_code: timeout must be positive");
    }
    const auto [base, prefix] = split_server_url(server_url);

    httplib::Client client(base);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);

    const std::string path = prefix + "/service";
    const auto started = std::chrono::steady_clock::now();
    httplib::Result result =
        client.Post(path, form_body(code), "application/x-www-form-urlencoded");
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);

    if (!result) {
        throw transport_error("POST " + base + path + " failed after " +
                                  std::to_string(elapsed.count()) + " ms: " +
                                  httplib::to_string(result.error()),
                              elapsed);
    }
    if (result->status != 200) {
        throw protocol_error("POST " + base + path + " returned HTTP " +
                                 std::to_string(result->status),
                             result->status);
    }
    return parse_service_response(result->body);
}

ExecutionResult parse_service_response(std::string_view body) {
    const nlohmann::json reply =
        nlohmann::json::parse(body, nullptr, /*allow_exceptions=*/false);
    if (reply.is_discarded()) {
        throw decode_error("service reply is not valid JSON");
    }
    if (!reply.is_object()) {
        throw decode_error("service reply is not a JSON object");
    }
    const auto success = reply.find("success");
    if (success == reply.end() || !success->is_boolean()) {
        throw decode_error("service reply field 'success' is missing or not a "
                           "boolean");
    }

    ExecutionResult out;
    out.success = success->get<bool>();
    if (const auto text = reply.find("stdout");
        text != reply.end() && text->is_string()) {
        out.stdout_text = text->get<std::string>();
    }
    out.raw_response.assign(body);
    return out;
}

} // namespace sagecell
