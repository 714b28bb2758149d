#include "gitcite/process.hpp"

#include "gitcite/errors.hpp"

#include <cerrno>
#include <cstring>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

namespace gitcite {

namespace {

class Pipe {
public:
    Pipe() {
        if (::pipe2(fds_, O_CLOEXEC) != 0) {
            throw Error(ErrorCode::IoFailure, std::string("pipe: ") + std::strerror(errno));
        }
    }
    ~Pipe() {
        close_read();
        close_write();
    }
    Pipe(const Pipe&) = delete;
    Pipe& operator=(const Pipe&) = delete;

    int read_end() const noexcept { return fds_[0]; }
    int write_end() const noexcept { return fds_[1]; }
    void close_read() noexcept { close_fd(fds_[0]); }
    void close_write() noexcept { close_fd(fds_[1]); }

private:
    static void close_fd(int& fd) noexcept {
        if (fd >= 0) {
            ::close(fd);
            fd = -1;
        }
    }
    int fds_[2] = {-1, -1};
};

} // namespace

ProcessResult run_process(const std::vector<std::string>& argv, const ProcessOptions& options) {
    if (argv.empty()) {
        throw Error(ErrorCode::IoFailure, "empty command line");
    }
    Pipe in;
    Pipe out;
    Pipe err;

    std::vector<char*> args;
    args.reserve(argv.size() + 1);
    for (const auto& arg : argv) {
        args.push_back(const_cast<char*>(arg.c_str()));
    }
    args.push_back(nullptr);

    const pid_t pid = ::fork();
    if (pid < 0) {
        throw Error(ErrorCode::IoFailure, std::string("fork: ") + std::strerror(errno));
    }
    if (pid == 0) {
        ::dup2(in.read_end(), STDIN_FILENO);
        ::dup2(out.write_end(), STDOUT_FILENO);
        ::dup2(err.write_end(), STDERR_FILENO);
        if (!options.cwd.empty() && ::chdir(options.cwd.c_str()) != 0) {
            ::_exit(127);
        }
        for (const auto& [name, value] : options.env) {
            ::setenv(name.c_str(), value.c_str(), 1);
        }
        ::execvp(args[0], args.data());
        ::_exit(127);
    }

    in.close_read();
    out.close_write();
    err.close_write();

    ProcessResult result;
    std::string_view pending_input = options.input;
    if (pending_input.empty()) {
        in.close_write();
    } else {
        // A child that exits without reading its input must not kill us.
        static const bool ignore_sigpipe = [] { return ::signal(SIGPIPE, SIG_IGN) != SIG_ERR; }();
        (void)ignore_sigpipe;
        // Partial writes only: a blocking write of a large input would stall
        // while the child waits for us to drain its output.
        ::fcntl(in.write_end(), F_SETFL, ::fcntl(in.write_end(), F_GETFL) | O_NONBLOCK);
    }

    // Drain stdout and stderr together so neither pipe can fill up and block the child.
    char buffer[65536];
    bool out_open = true;
    bool err_open = true;
    while (out_open || err_open) {
        pollfd fds[3];
        nfds_t count = 0;
        if (out_open) {
            fds[count++] = {out.read_end(), POLLIN, 0};
        }
        if (err_open) {
            fds[count++] = {err.read_end(), POLLIN, 0};
        }
        if (!pending_input.empty()) {
            fds[count++] = {in.write_end(), POLLOUT, 0};
        }
        if (::poll(fds, count, -1) < 0) {
            if (errno == EINTR) {
                continue;
            }
            break;
        }
        for (nfds_t i = 0; i < count; ++i) {
            if (fds[i].revents == 0) {
                continue;
            }
            if (fds[i].fd == in.write_end()) {
                auto n = ::write(fds[i].fd, pending_input.data(), pending_input.size());
                if (n > 0) {
                    pending_input.remove_prefix(static_cast<std::size_t>(n));
                }
                if ((n < 0 && errno != EAGAIN && errno != EINTR) || pending_input.empty()) {
                    pending_input = {};
                    in.close_write();
                }
                continue;
            }
            auto n = ::read(fds[i].fd, buffer, sizeof buffer);
            if (n > 0) {
                (fds[i].fd == out.read_end() ? result.out : result.err).append(buffer, static_cast<std::size_t>(n));
            } else if (n == 0 || errno != EINTR) {
                (fds[i].fd == out.read_end() ? out_open : err_open) = false;
            }
        }
    }
    in.close_write();

    int status = 0;
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    if (WIFEXITED(status)) {
        result.status = WEXITSTATUS(status);
    } else if (WIFSIGNALED(status)) {
        result.status = 128 + WTERMSIG(status);
    }
    if (result.status == 127 && result.err.empty()) {
        result.err = "cannot run " + argv[0];
    }
    return result;
}

} // namespace gitcite
