// Copyright 2026 The UnJoin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <httplib.h>

#include "unjoin/llm.hpp"

namespace unjoin {

namespace {

class HttpTransport : public Transport {
 public:
  HttpResponse Post(const std::string& url, const std::string& body,
                    const std::vector<std::pair<std::string, std::string>>& headers, double timeout_s) override {
    size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw TransportError("endpoint is not an absolute URL: " + url);
    size_t path_start = url.find('/', scheme_end + 3);
    std::string origin = url.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

    httplib::Client client(origin);
    auto seconds = static_cast<time_t>(timeout_s);
    auto micros = static_cast<time_t>((timeout_s - static_cast<double>(seconds)) * 1e6);
    client.set_connection_timeout(seconds, micros);
    client.set_read_timeout(seconds, micros);
    client.set_write_timeout(seconds, micros);

    httplib::Headers h;
    std::string content_type = "application/json";
    for (const auto& [k, v] : headers) {
      if (k == "Content-Type")
        content_type = v;
      else
        h.emplace(k, v);
    }
    auto result = client.Post(path, h, body, content_type);
    if (!result) throw TransportError("POST " + url + " failed: " + httplib::to_string(result.error()));
    return {result->status, result->body};
  }
};

}  // namespace

std::unique_ptr<Transport> MakeHttpTransport() { return std::make_unique<HttpTransport>(); }

}  // namespace unjoin
