from grassfano.cli import main

main()
