// Copyright 2026 The ScholarFed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCHOLARFED_SRC_LISTEN_H_
#define SCHOLARFED_SRC_LISTEN_H_

#include <sys/socket.h>

#include "httplib.h"

namespace scholarfed::internal {

// SO_REUSEADDR without SO_REUSEPORT, so a port held by another listener
// fails to bind instead of being shared.
inline void UseExclusivePorts(httplib::Server& server) {
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
}

}  // namespace scholarfed::internal

#endif  // SCHOLARFED_SRC_LISTEN_H_
