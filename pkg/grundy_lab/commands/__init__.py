from grundy_lab.commands import check_bounds, generate, invariants, oracle, witness

COMMANDS = {
    module.Command.name: module.Command
    for module in (invariants, check_bounds, generate, oracle, witness)
}
