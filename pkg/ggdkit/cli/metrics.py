from prometheus_client import Counter

from ggdkit.conf import NAMESPACE

commands_total = Counter(
    "ggdkit_cli_commands_total",
    "Counter of CLI commands run, by command.",
    ["command"],
    namespace=NAMESPACE,
)

errors_total = Counter(
    "ggdkit_cli_errors_total",
    "Counter of exceptions raised by CLI commands, by command and exception type.",
    ["command", "type"],
    namespace=NAMESPACE,
)
