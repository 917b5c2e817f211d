#include "fracsch/error.hpp"

#include <iostream>
#include <mutex>

namespace fracsch {

namespace {

std::mutex& handler_mutex() {
    static std::mutex m;
    return m;
}

WarningHandler& handler_slot() {
    static WarningHandler h = [](const std::string& where, const std::string& message) {
        std::cerr << "warning [" << where << "]: " << message << '\n';
    };
    return h;
}

}  // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
    std::lock_guard<std::mutex> lock(handler_mutex());
    WarningHandler previous = std::move(handler_slot());
    handler_slot() = std::move(handler);
    return previous;
}

void warn(const std::string& where, const std::string& message) {
    WarningHandler h;
    {
        std::lock_guard<std::mutex> lock(handler_mutex());
        h = handler_slot();
    }
    if (h) h(where, message);
}

}  // namespace fracsch
