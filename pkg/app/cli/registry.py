"""Name-to-command lookup for the pipeline stages."""

from typing import Dict, List, Type

from app.cli.base import Command
from app.cli.commands import EvaluateCommand, InspectCommand, PredictCommand, TrainCommand
from app.common.exceptions import ConfigurationError

# Pipeline order; list_commands and command_names keep it
DEFAULT_COMMANDS = (TrainCommand, PredictCommand, EvaluateCommand, InspectCommand)


class CommandRegistry:
    """Commands keyed by their name property."""

    def __init__(self, commands=DEFAULT_COMMANDS):
        self._commands: Dict[str, Type[Command]] = {}
        for command_class in commands:
            self.register(command_class)

    def register(self, command_class: Type[Command], replace: bool = False) -> None:
        """Add a command class; an existing name is only overwritten with replace=True."""
        name = command_class().name
        if name in self._commands and not replace:
            raise ConfigurationError("command", {"reason": f"{name!r} is already registered"})
        self._commands[name] = command_class

    def get_command(self, name: str) -> Type[Command]:
        """Command class registered under name."""
        try:
            return self._commands[name]
        except KeyError:
            raise ConfigurationError(
                "command", {"reason": f"unknown command {name!r}", "known": self.command_names}
            ) from None

    def create(self, name: str) -> Command:
        """Fresh instance of the command registered under name."""
        return self.get_command(name)()

    def list_commands(self) -> Dict[str, str]:
        """Name to description."""
        return {name: command_class().description for name, command_class in self._commands.items()}

    @property
    def command_names(self) -> List[str]:
        """Registered names in registration order."""
        return list(self._commands)


registry = CommandRegistry()
