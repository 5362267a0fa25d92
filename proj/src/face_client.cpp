#include "fatigue/face_client.hpp"

#include <chrono>
#include <fstream>
#include <mutex>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "fatigue/errors.hpp"
#include "fatigue/providers.hpp"

namespace fatigue {

namespace {

struct ParsedEndpoint {
  std::string host_port;  // scheme://host:port for httplib::Client
  std::string path_prefix;
};

ParsedEndpoint parse_endpoint(const std::string& endpoint) {
  if (endpoint.empty()) {
    throw ConfigError("service endpoint is not configured");
  }
  const std::size_t scheme = endpoint.find("://");
  const std::size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
  const std::size_t slash = endpoint.find('/', host_start);
  if (slash == std::string::npos) return {endpoint, ""};
  return {endpoint.substr(0, slash), endpoint.substr(slash)};
}

bool retryable_status(int status) {
  return status == 429 || (status >= 500 && status < 600);
}

}  // namespace

std::vector<FaceRecord> detect_faces(std::span<const std::uint8_t> image_bytes,
                                     const ServiceConfig& config,
                                     const std::string& image_ref) {
  if (!provider_known(config.provider)) {
    throw ConfigError("unknown provider '" + config.provider + "'");
  }
  const ParsedEndpoint endpoint = parse_endpoint(config.endpoint);

  httplib::Client client(endpoint.host_port);
  client.set_connection_timeout(10, 0);
  client.set_read_timeout(30, 0);
  httplib::Headers headers = {{"X-Api-Key", config.api_key},
                              {"X-Api-Secret", config.api_secret}};

  std::string last_error;
  for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(
          config.retry_base_ms * (1 << (attempt - 1))));
    }
    httplib::Result res = client.Post(
        endpoint.path_prefix + "/detect", headers,
        reinterpret_cast<const char*>(image_bytes.data()), image_bytes.size(),
        "application/octet-stream");
    if (!res) {
      last_error = "connection failure (" + httplib::to_string(res.error()) + ")";
      continue;
    }
    if (res->status == 401 || res->status == 403) {
      throw AuthError("service rejected credentials (HTTP " +
                      std::to_string(res->status) + ")");
    }
    if (retryable_status(res->status)) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw TransportError("service returned HTTP " +
                           std::to_string(res->status));
    }

    nlohmann::json j = nlohmann::json::parse(res->body, nullptr, false);
    if (j.is_discarded()) {
      throw SchemaError("service returned a non-JSON body");
    }
    std::vector<FaceRecord> records;
    int index = 0;
    for (const nlohmann::json& payload :
         provider_face_payloads(j, config.provider)) {
      FaceRecord rec = normalize_provider_payload(payload, config.provider,
                                                  image_ref);
      if (rec.face_id.empty()) {
        rec.face_id = image_ref + "#" + std::to_string(index);
      }
      validate(rec);
      records.push_back(std::move(rec));
      ++index;
    }
    return records;
  }
  throw TransportError("service unreachable after " +
                       std::to_string(config.max_retries + 1) + " attempts: " +
                       last_error);
}

std::vector<BatchDetectItem> detect_faces_batch(
    const std::vector<std::string>& image_paths, const ServiceConfig& config) {
  std::vector<BatchDetectItem> items(image_paths.size());
  for (std::size_t i = 0; i < image_paths.size(); ++i) {
    items[i].image_ref = image_paths[i];
  }

  // Work is claimed by index, so results land in input order no matter how
  // the workers interleave.
  std::mutex next_mutex;
  std::size_t next = 0;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard lock(next_mutex);
        if (next >= image_paths.size()) return;
        i = next++;
      }
      try {
        std::ifstream in(image_paths[i], std::ios::binary);
        if (!in) throw InputError("cannot open image '" + image_paths[i] + "'");
        std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
        items[i].faces = detect_faces(bytes, config, image_paths[i]);
      } catch (const AuthError&) {
        throw;  // credentials are global: abort the whole batch
      } catch (const TransportError&) {
        throw;  // endpoint unreachable after retries: abort
      } catch (const Error& e) {
        items[i].error = e.what();
      }
    }
  };

  const int jobs = std::max(
      1, std::min<int>(config.max_inflight,
                       static_cast<int>(image_paths.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (int t = 0; t < jobs; ++t) {
      threads.emplace_back([&] {
        try {
          worker();
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (std::thread& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
  }
  return items;
}

}  // namespace fatigue
