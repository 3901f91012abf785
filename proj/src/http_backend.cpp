#include "binv/http_backend.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <httplib.h>
#include <json.hpp>

namespace binv {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t size) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::uint64_t fnv1a_str(std::uint64_t h, const std::string& s) {
    return fnv1a(h, s.data(), s.size());
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// Splits "http://host:port/path" into base and path.
std::pair<std::string, std::string> split_url(const std::string& url) {
    std::size_t scheme = url.find("://");
    std::size_t path_start =
        url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

std::string base64_encode(const std::uint8_t* data, std::size_t size) {
    static const char* alphabet =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve((size + 2) / 3 * 4);
    for (std::size_t i = 0; i < size; i += 3) {
        std::uint32_t n = std::uint32_t(data[i]) << 16;
        if (i + 1 < size) n |= std::uint32_t(data[i + 1]) << 8;
        if (i + 2 < size) n |= data[i + 2];
        out.push_back(alphabet[(n >> 18) & 63]);
        out.push_back(alphabet[(n >> 12) & 63]);
        out.push_back(i + 1 < size ? alphabet[(n >> 6) & 63] : '=');
        out.push_back(i + 2 < size ? alphabet[n & 63] : '=');
    }
    return out;
}

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
    if (config_.endpoint_url.empty())
        throw InvalidInputError("HttpBackend: endpoint URL required");
    if (!config_.cache_dir.empty()) fs::create_directories(config_.cache_dir);
}

std::string HttpBackend::cache_key(const std::string& prompt,
                                   const std::vector<const RasterImage*>& images,
                                   double temperature, int repeat_index) const {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    h = fnv1a_str(h, config_.endpoint_url);
    h = fnv1a_str(h, prompt);
    for (const RasterImage* img : images)
        if (img) h = fnv1a(h, img->pixels.data(), img->pixels.size());
    h = fnv1a(h, &temperature, sizeof temperature);
    h = fnv1a(h, &repeat_index, sizeof repeat_index);
    return hex64(h);
}

void HttpBackend::log_interaction(const std::string& prompt, const std::string& reply,
                                  bool cached) {
    if (config_.log_path.empty()) return;
    std::lock_guard<std::mutex> lock(log_mutex_);
    std::ofstream f(config_.log_path, std::ios::app);
    f << json{{"prompt", prompt}, {"reply", reply}, {"cached", cached}}.dump()
      << "\n";
}

std::string HttpBackend::complete(const std::string& prompt,
                                  const std::vector<const RasterImage*>& images,
                                  double temperature, int repeat_index) {
    fs::path cache_file;
    if (!config_.cache_dir.empty()) {
        cache_file = fs::path(config_.cache_dir) /
                     (cache_key(prompt, images, temperature, repeat_index) + ".txt");
        if (fs::exists(cache_file)) {
            std::ifstream f(cache_file, std::ios::binary);
            std::string reply((std::istreambuf_iterator<char>(f)),
                              std::istreambuf_iterator<char>());
            log_interaction(prompt, reply, true);
            return reply;
        }
    }

    json content = json::array();
    content.push_back({{"type", "text"}, {"text", prompt}});
    for (const RasterImage* img : images) {
        if (!img) continue;
        auto png = encode_png(*img);
        content.push_back(
            {{"type", "image_url"},
             {"image_url",
              {{"url", "data:image/png;base64," +
                           base64_encode(png.data(), png.size())}}}});
    }
    json body = {{"model", config_.model},
                 {"temperature", temperature},
                 {"messages", json::array({{{"role", "user"}, {"content", content}}})}};

    auto [base, path] = split_url(config_.endpoint_url);
    httplib::Client client(base);
    client.set_read_timeout(config_.timeout_seconds, 0);
    httplib::Headers headers;
    if (const char* token = std::getenv(config_.auth_env_var.c_str()))
        headers.emplace("Authorization", std::string("Bearer ") + token);

    auto res = client.Post(path, headers, body.dump(), "application/json");
    if (!res)
        throw BackendError("http: transport failure contacting " +
                           config_.endpoint_url);
    if (res->status != 200)
        throw BackendError("http: status " + std::to_string(res->status) + ": " +
                           res->body);

    std::string reply;
    try {
        json parsed = json::parse(res->body);
        reply = parsed.at("choices").at(0).at("message").at("content")
                    .get<std::string>();
    } catch (const json::exception& e) {
        throw BackendError(std::string("http: malformed response: ") + e.what());
    }
    ++network_calls_;

    if (!cache_file.empty()) {
        // Atomic write-then-rename so concurrent readers never see partials.
        fs::path tmp = cache_file;
        tmp += ".tmp" + std::to_string(
                            reinterpret_cast<std::uintptr_t>(&cache_file));
        {
            std::ofstream f(tmp, std::ios::binary);
            f.write(reply.data(), static_cast<std::streamsize>(reply.size()));
        }
        fs::rename(tmp, cache_file);
    }
    log_interaction(prompt, reply, false);
    return reply;
}

VerifyResult HttpBackend::verify(const ClaimQuery& query) {
    std::string prompt = query.rendered_claim();
    std::string reply =
        complete(prompt, query.images, query.temperature, query.repeat_index);
    return {parse_verdict(reply), reply};
}

McqResult HttpBackend::answer_mcq(const McqQuery& query) {
    std::string prompt = query.rendered();
    std::string reply =
        complete(prompt, query.images, query.temperature, query.repeat_index);
    auto choice = parse_mcq_choice(reply, query.options);
    if (!choice) throw BackendError("http: unparseable MCQ reply '" + reply + "'");
    return {*choice, reply};
}

}  // namespace binv
