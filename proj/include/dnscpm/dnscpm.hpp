/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/
#ifndef DNSCPM_DNSCPM_HPP
#define DNSCPM_DNSCPM_HPP

// Umbrella header: the full poisoning-detection toolkit.

#include "dnscpm/cms.hpp"
#include "dnscpm/cost_model.hpp"
#include "dnscpm/domain_name.hpp"
#include "dnscpm/engine.hpp"
#include "dnscpm/errors.hpp"
#include "dnscpm/format.hpp"
#include "dnscpm/ingest.hpp"
#include "dnscpm/mitigate.hpp"
#include "dnscpm/packet.hpp"
#include "dnscpm/pcap.hpp"
#include "dnscpm/report.hpp"
#include "dnscpm/rng.hpp"
#include "dnscpm/rules.hpp"
#include "dnscpm/samplers.hpp"
#include "dnscpm/sweep.hpp"
#include "dnscpm/trafficgen.hpp"
#include "dnscpm/wire.hpp"

#endif // DNSCPM_DNSCPM_HPP
