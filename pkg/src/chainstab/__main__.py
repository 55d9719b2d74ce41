from chainstab.cli import main

main()
