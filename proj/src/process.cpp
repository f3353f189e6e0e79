#include "specfem_mcp/process.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstring>
#include <set>
#include <stdexcept>

namespace fs = std::filesystem;

namespace smcp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void ignore_sigpipe_once() {
    static const bool done = [] {
        ::signal(SIGPIPE, SIG_IGN);
        return true;
    }();
    (void)done;
}

struct Pipe {
    int read_fd = -1;
    int write_fd = -1;

    Pipe() {
        int fds[2];
        if (::pipe(fds) != 0) {
            throw std::runtime_error(std::string("pipe failed: ") + std::strerror(errno));
        }
        read_fd = fds[0];
        write_fd = fds[1];
    }
    void close_read() {
        if (read_fd >= 0) {
            ::close(read_fd);
            read_fd = -1;
        }
    }
    void close_write() {
        if (write_fd >= 0) {
            ::close(write_fd);
            write_fd = -1;
        }
    }
    ~Pipe() {
        close_read();
        close_write();
    }
};

[[noreturn]] void exec_child(const std::vector<std::string>& argv, const fs::path& cwd) {
    if (!cwd.empty()) {
        if (::chdir(cwd.c_str()) != 0) {
            ::_exit(126);
        }
    }
    std::vector<char*> cargv;
    cargv.reserve(argv.size() + 1);
    for (const auto& a : argv) {
        cargv.push_back(const_cast<char*>(a.c_str()));
    }
    cargv.push_back(nullptr);
    ::execvp(cargv[0], cargv.data());
    ::_exit(127);
}

int reap(int pid) {
    int status = 0;
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    if (WIFEXITED(status)) {
        return WEXITSTATUS(status);
    }
    if (WIFSIGNALED(status)) {
        return 128 + WTERMSIG(status);
    }
    return -1;
}

std::set<fs::path> list_tree(const fs::path& dir) {
    std::set<fs::path> files;
    if (!fs::exists(dir)) {
        return files;
    }
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (entry.is_regular_file()) {
            files.insert(fs::relative(entry.path(), dir));
        }
    }
    return files;
}

} // namespace

std::vector<std::string> tail_lines(const std::string& text, std::size_t n) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string::npos) {
            nl = text.size();
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    if (lines.size() > n) {
        lines.erase(lines.begin(), lines.end() - static_cast<std::ptrdiff_t>(n));
    }
    return lines;
}

std::vector<std::string> compose_command(const RunRequest& req) {
    if (req.nproc < 1) {
        throw std::invalid_argument("nproc must be >= 1");
    }
    if (!(req.timeout_sec > 0)) {
        throw std::invalid_argument("timeout must be > 0");
    }
    if (req.executable.empty()) {
        throw std::invalid_argument("executable name must be non-empty");
    }
    const fs::path exe = req.bin_dir / req.executable;
    if (req.mode == RunMode::real_binaries && !fs::exists(exe)) {
        throw std::runtime_error("executable not found: " + exe.string() +
                                 " (set the bin directory for this profile)");
    }
    std::vector<std::string> argv;
    if (req.nproc > 1) {
        argv.push_back(req.mpi_launcher);
        argv.push_back("-np");
        argv.push_back(std::to_string(req.nproc));
    }
    argv.push_back(exe.string());
    argv.insert(argv.end(), req.extra_args.begin(), req.extra_args.end());
    return argv;
}

ExecResult run_process(const std::vector<std::string>& argv, const fs::path& working_dir,
                       double timeout_sec, const std::string& stdin_data) {
    ignore_sigpipe_once();
    Pipe in_pipe, out_pipe, err_pipe;
    const auto start = Clock::now();

    const int pid = ::fork();
    if (pid < 0) {
        throw std::runtime_error(std::string("fork failed: ") + std::strerror(errno));
    }
    if (pid == 0) {
        ::dup2(in_pipe.read_fd, STDIN_FILENO);
        ::dup2(out_pipe.write_fd, STDOUT_FILENO);
        ::dup2(err_pipe.write_fd, STDERR_FILENO);
        in_pipe.close_read();
        in_pipe.close_write();
        out_pipe.close_read();
        out_pipe.close_write();
        err_pipe.close_read();
        err_pipe.close_write();
        exec_child(argv, working_dir);
    }

    in_pipe.close_read();
    out_pipe.close_write();
    err_pipe.close_write();

    if (!stdin_data.empty()) {
        std::size_t off = 0;
        while (off < stdin_data.size()) {
            const ssize_t n =
                ::write(in_pipe.write_fd, stdin_data.data() + off, stdin_data.size() - off);
            if (n <= 0) {
                break;
            }
            off += static_cast<std::size_t>(n);
        }
    }
    in_pipe.close_write();

    ExecResult result;
    char buf[4096];
    bool out_open = true;
    bool err_open = true;
    while (out_open || err_open) {
        const double remaining = timeout_sec - seconds_since(start);
        if (remaining <= 0) {
            result.timed_out = true;
            break;
        }
        struct pollfd fds[2];
        int nfds = 0;
        if (out_open) {
            fds[nfds++] = {out_pipe.read_fd, POLLIN, 0};
        }
        if (err_open) {
            fds[nfds++] = {err_pipe.read_fd, POLLIN, 0};
        }
        const int timeout_ms = std::min(200, static_cast<int>(remaining * 1000) + 1);
        const int rv = ::poll(fds, static_cast<nfds_t>(nfds), timeout_ms);
        if (rv < 0 && errno != EINTR) {
            break;
        }
        for (int i = 0; i < nfds; ++i) {
            if ((fds[i].revents & (POLLIN | POLLHUP)) == 0) {
                continue;
            }
            const ssize_t n = ::read(fds[i].fd, buf, sizeof buf);
            const bool is_out = fds[i].fd == out_pipe.read_fd;
            if (n > 0) {
                (is_out ? result.stdout_text : result.stderr_text).append(buf, n);
            } else {
                (is_out ? out_open : err_open) = false;
            }
        }
    }

    if (result.timed_out) {
        ::kill(pid, SIGKILL);
        reap(pid);
        result.exit_code = -1;
    } else {
        // Streams closed; wait for exit, still bounded by the deadline.
        for (;;) {
            int status = 0;
            const int r = ::waitpid(pid, &status, WNOHANG);
            if (r == pid) {
                result.exit_code = WIFEXITED(status)    ? WEXITSTATUS(status)
                                   : WIFSIGNALED(status) ? 128 + WTERMSIG(status)
                                                         : -1;
                break;
            }
            if (seconds_since(start) > timeout_sec) {
                result.timed_out = true;
                ::kill(pid, SIGKILL);
                reap(pid);
                result.exit_code = -1;
                break;
            }
            ::usleep(2000);
        }
    }
    result.wall_time_sec = seconds_since(start);
    return result;
}

RunReport run_executable(const RunRequest& req, Workspace& ws) {
    const auto argv = compose_command(req);
    const fs::path cwd = req.working_dir.empty() ? ws.root() : req.working_dir;
    const auto before = list_tree(ws.output_dir());

    const ExecResult res = run_process(argv, cwd, req.timeout_sec);

    RunReport report;
    report.wall_time_sec = res.wall_time_sec;
    report.stdout_tail = tail_lines(res.stdout_text, 20);
    report.stderr_tail = tail_lines(res.stderr_text, 20);
    if (res.timed_out) {
        report.status = RunReport::Status::timeout;
    } else {
        report.exit_code = res.exit_code;
        report.status = res.exit_code == 0 ? RunReport::Status::ok : RunReport::Status::failed;
    }

    const auto after = list_tree(ws.output_dir());
    for (const auto& path : after) {
        if (!before.contains(path)) {
            report.produced_files.push_back(path.string());
        }
    }
    std::sort(report.produced_files.begin(), report.produced_files.end());
    for (const auto& rel : report.produced_files) {
        ws.record("OUTPUT_FILES/" + rel, req.executable);
    }
    return report;
}

ChildProcess::ChildProcess(const std::vector<std::string>& argv) {
    ignore_sigpipe_once();
    Pipe to_child, from_child;
    const int pid = ::fork();
    if (pid < 0) {
        throw std::runtime_error(std::string("fork failed: ") + std::strerror(errno));
    }
    if (pid == 0) {
        ::dup2(to_child.read_fd, STDIN_FILENO);
        ::dup2(from_child.write_fd, STDOUT_FILENO);
        to_child.close_read();
        to_child.close_write();
        from_child.close_read();
        from_child.close_write();
        exec_child(argv, {});
    }
    pid_ = pid;
    to_child.close_read();
    from_child.close_write();
    stdin_fd_ = to_child.write_fd;
    stdout_fd_ = from_child.read_fd;
    to_child.write_fd = -1; // ownership transferred
    from_child.read_fd = -1;
}

ChildProcess::~ChildProcess() {
    kill_now();
    if (stdin_fd_ >= 0) {
        ::close(stdin_fd_);
    }
    if (stdout_fd_ >= 0) {
        ::close(stdout_fd_);
    }
}

bool ChildProcess::write_line(const std::string& line) {
    if (stdin_fd_ < 0) {
        return false;
    }
    std::string data = line;
    data.push_back('\n');
    std::size_t off = 0;
    while (off < data.size()) {
        const ssize_t n = ::write(stdin_fd_, data.data() + off, data.size() - off);
        if (n <= 0) {
            return false;
        }
        off += static_cast<std::size_t>(n);
    }
    return true;
}

std::optional<std::string> ChildProcess::read_line(double timeout_sec) {
    const auto start = Clock::now();
    for (;;) {
        const auto nl = buffer_.find('\n');
        if (nl != std::string::npos) {
            std::string line = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            return line;
        }
        if (stdout_fd_ < 0) {
            return std::nullopt;
        }
        const double remaining = timeout_sec - seconds_since(start);
        if (remaining <= 0) {
            return std::nullopt;
        }
        struct pollfd fd = {stdout_fd_, POLLIN, 0};
        const int rv = ::poll(&fd, 1, std::min(200, static_cast<int>(remaining * 1000) + 1));
        if (rv < 0 && errno != EINTR) {
            return std::nullopt;
        }
        if (rv > 0 && (fd.revents & (POLLIN | POLLHUP)) != 0) {
            char buf[4096];
            const ssize_t n = ::read(stdout_fd_, buf, sizeof buf);
            if (n > 0) {
                buffer_.append(buf, n);
            } else {
                ::close(stdout_fd_);
                stdout_fd_ = -1;
            }
        }
    }
}

void ChildProcess::close_stdin() {
    if (stdin_fd_ >= 0) {
        ::close(stdin_fd_);
        stdin_fd_ = -1;
    }
}

bool ChildProcess::running() {
    if (pid_ < 0 || exit_code_) {
        return false;
    }
    int status = 0;
    const int r = ::waitpid(pid_, &status, WNOHANG);
    if (r == pid_) {
        exit_code_ = WIFEXITED(status)    ? WEXITSTATUS(status)
                     : WIFSIGNALED(status) ? 128 + WTERMSIG(status)
                                           : -1;
        return false;
    }
    return r == 0;
}

int ChildProcess::wait() {
    if (exit_code_) {
        return *exit_code_;
    }
    if (pid_ < 0) {
        return -1;
    }
    exit_code_ = reap(pid_);
    return *exit_code_;
}

void ChildProcess::kill_now() {
    if (pid_ >= 0 && !exit_code_ && running()) {
        ::kill(pid_, SIGKILL);
        exit_code_ = reap(pid_);
    }
}

} // namespace smcp
