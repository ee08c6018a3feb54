#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "reddit_http_transport.hpp"

#include <charconv>

namespace credrep {

struct RedditHttpTransport::Impl {
    httplib::Client client;
    httplib::Headers headers;

    Impl(const std::string& host, const std::string& token) : client(host) {
        client.set_connection_timeout(10);
        client.set_read_timeout(30);
        headers = {{"Authorization", "bearer " + token},
                   {"User-Agent", "credrep/0.1 (threat-intel credibility scorer)"}};
    }
};

RedditHttpTransport::RedditHttpTransport(std::string host, std::string token)
    : impl_(std::make_unique<Impl>(host, token)) {}

RedditHttpTransport::~RedditHttpTransport() = default;

HttpResponse RedditHttpTransport::get(const std::string& path) {
    HttpResponse out;
    auto result = impl_->client.Get(path, impl_->headers);
    if (!result) return out;  // status 0 = transport failure
    out.status = result->status;
    out.body = result->body;
    if (result->has_header("Retry-After")) {
        const std::string value = result->get_header_value("Retry-After");
        double seconds = 0.0;
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), seconds);
        if (ec == std::errc{} && ptr == value.data() + value.size()) {
            out.retry_after_seconds = seconds;
        }
    }
    return out;
}

} // namespace credrep
