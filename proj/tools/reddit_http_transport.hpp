#pragma once

#include <memory>
#include <string>

#include "credrep/reddit_client.hpp"

namespace credrep {

/// Live HTTPS transport against the Reddit API. Sends the bearer token from
/// the CREDREP_API_TOKEN environment variable.
class RedditHttpTransport : public HttpTransport {
public:
    RedditHttpTransport(std::string host, std::string token);
    ~RedditHttpTransport() override;

    HttpResponse get(const std::string& path) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace credrep
