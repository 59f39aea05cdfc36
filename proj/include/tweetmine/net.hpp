#pragma once

#include <cstring>
#include <string>

#include <netdb.h>
#include <sys/socket.h>
#include <unistd.h>

#include "tweetmine/error.hpp"

namespace tweetmine {

/// True when the input spec names a TCP source ("tcp://host:port").
inline bool is_tcp_url(const std::string& in) {
  return in.starts_with("tcp://");
}

/// Connects to tcp://host:port and reads the byte stream until the peer
/// closes. The caller splits it into NDJSON lines.
inline std::string read_tcp_stream(const std::string& url) {
  const std::string hostport = url.substr(6);
  const auto colon = hostport.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == hostport.size())
    throw ConfigError("tcp input must be tcp://host:port, got: " + url);
  const std::string host = hostport.substr(0, colon);
  const std::string port = hostport.substr(colon + 1);

  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (int rc = ::getaddrinfo(host.c_str(), port.c_str(), &hints, &res);
      rc != 0)
    throw DataError("cannot resolve " + host + ": " + gai_strerror(rc));

  int fd = -1;
  for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) throw DataError("cannot connect to " + url);

  std::string data;
  char buf[1 << 16];
  for (;;) {
    const ssize_t n = ::read(fd, buf, sizeof(buf));
    if (n < 0) {
      ::close(fd);
      throw DataError("read error on " + url);
    }
    if (n == 0) break;
    data.append(buf, static_cast<std::size_t>(n));
  }
  ::close(fd);
  return data;
}

}  // namespace tweetmine
