#pragma once

// Minimal TCP front end for ProtocolSession: one session and one thread per
// connection, newline-delimited requests and replies. POSIX only.

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cstdint>
#include <cstring>
#include <mutex>
#include <string>
#include <system_error>
#include <thread>
#include <utility>
#include <vector>

#include "tapcode/protocol.hpp"

namespace tapcode {

class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  Socket(Socket&& o) noexcept : fd_(std::exchange(o.fd_, -1)) {}
  Socket& operator=(Socket&& o) noexcept {
    if (this != &o) {
      reset();
      fd_ = std::exchange(o.fd_, -1);
    }
    return *this;
  }
  ~Socket() { reset(); }

  int fd() const noexcept { return fd_; }
  explicit operator bool() const noexcept { return fd_ >= 0; }

  void reset() noexcept {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

  bool send_all(std::string_view data) const {
    while (!data.empty()) {
      const auto n = ::send(fd_, data.data(), data.size(), MSG_NOSIGNAL);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) return false;
      data.remove_prefix(static_cast<std::size_t>(n));
    }
    return true;
  }

 private:
  int fd_ = -1;
};

/// Reads newline-terminated lines from a socket.
class LineReader {
 public:
  explicit LineReader(const Socket& s) : sock_(&s) {}

  bool next(std::string& line) {
    for (;;) {
      const auto nl = buffer_.find('\n');
      if (nl != std::string::npos) {
        line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        return true;
      }
      if (buffer_.size() > kMaxLine) return false;
      char chunk[512];
      const auto n = ::recv(sock_->fd(), chunk, sizeof chunk, 0);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) return false;
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

 private:
  static constexpr std::size_t kMaxLine = 4096;
  const Socket* sock_;
  std::string buffer_;
};

class LineServer {
 public:
  /// Binds 127.0.0.1:port; port 0 picks a free one (see port()).
  explicit LineServer(std::uint16_t port, const TapTable& table = canonical_german_table(), RelaxedOptions relaxed = {})
      : table_(&table), relaxed_(relaxed) {
    listener_ = Socket(::socket(AF_INET, SOCK_STREAM, 0));
    if (!listener_) throw std::system_error(errno, std::generic_category(), "socket");
    const int yes = 1;
    ::setsockopt(listener_.fd(), SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(port);
    if (::bind(listener_.fd(), reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
      throw std::system_error(errno, std::generic_category(), "bind");
    }
    if (::listen(listener_.fd(), 16) != 0) throw std::system_error(errno, std::generic_category(), "listen");
    socklen_t len = sizeof addr;
    ::getsockname(listener_.fd(), reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
  }

  ~LineServer() {
    stop();
    std::vector<std::thread> workers;
    {
      std::lock_guard lock(mutex_);
      workers.swap(workers_);
    }
    for (auto& t : workers) t.join();
  }

  std::uint16_t port() const noexcept { return port_; }

  /// Accepts until stop(). Blocks the calling thread.
  void run() {
    while (!stopping_) {
      Socket client(::accept(listener_.fd(), nullptr, nullptr));
      if (!client) {
        if (errno == EINTR) continue;
        break;
      }
      std::lock_guard lock(mutex_);
      clients_.push_back(client.fd());
      workers_.emplace_back([this, c = std::move(client)]() mutable { serve_client(std::move(c)); });
    }
  }

  void stop() {
    if (stopping_.exchange(true)) return;
    ::shutdown(listener_.fd(), SHUT_RDWR);
    std::lock_guard lock(mutex_);
    for (int fd : clients_) ::shutdown(fd, SHUT_RDWR);
  }

 private:
  void serve_client(Socket client) {
    ProtocolSession session(*table_, relaxed_);
    LineReader reader(client);
    std::string line;
    bool open = true;
    while (open && reader.next(line)) {
      for (const auto& reply : session.handle(line)) {
        if (!client.send_all(reply + "\n")) {
          open = false;
          break;
        }
      }
    }
    std::lock_guard lock(mutex_);
    std::erase(clients_, client.fd());
  }

  const TapTable* table_;
  RelaxedOptions relaxed_;
  Socket listener_;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::mutex mutex_;
  std::vector<std::thread> workers_;
  std::vector<int> clients_;
};

}  // namespace tapcode
