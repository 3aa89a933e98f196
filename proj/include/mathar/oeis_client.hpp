#pragma once

// HTTPS download of OEIS b-files. Kept apart from bfile.hpp so that only code
// that actually talks to the network pulls in cpp-httplib and OpenSSL.

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif

#include <chrono>
#include <filesystem>
#include <string>

#include <httplib.h>

#include "mathar/bfile.hpp"

namespace mathar {

inline constexpr const char* oeis_host = "https://oeis.org";

/// GET https://oeis.org/<id>/b<digits>.txt. Throws http_failure on transport
/// errors (status 0) and on any non-200 response.
inline std::string https_download_bfile(const std::string& id, std::chrono::seconds timeout) {
    if (!is_sequence_id(id)) {
        throw invalid_sequence_id(id);
    }
    httplib::Client client(oeis_host);
    client.set_follow_location(true);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    const std::string target = "/" + id + "/" + bfile_name(id);
    const auto res = client.Get(target);
    if (!res) {
        throw http_failure(0, httplib::to_string(res.error()));
    }
    if (res->status != 200) {
        throw http_failure(res->status, std::string(oeis_host) + target);
    }
    return res->body;
}

inline bfile fetch_bfile(const std::string& id, const std::filesystem::path& cache_dir, bool offline,
                         std::chrono::seconds timeout = std::chrono::seconds(30)) {
    return fetch_bfile(id, cache_dir, offline, bfile_downloader(https_download_bfile), timeout);
}

}  // namespace mathar
