#include "cfa/warnings.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace cfa {

namespace {

std::mutex g_mutex;

WarningHandler& handler_slot() {
    static WarningHandler handler = [](const std::string& message) {
        std::cerr << "cfa: warning: " << message << '\n';
    };
    return handler;
}

} // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
    std::lock_guard lock(g_mutex);
    WarningHandler previous = std::move(handler_slot());
    handler_slot() = std::move(handler);
    return previous;
}

void warn(const std::string& message) {
    WarningHandler handler;
    {
        std::lock_guard lock(g_mutex);
        handler = handler_slot();
    }
    if (handler) {
        handler(message);
    }
}

} // namespace cfa
